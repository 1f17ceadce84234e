#ifndef CENTRIC_CSV_HPP
#define CENTRIC_CSV_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "centric/dataset.hpp"

namespace centric {

/**
 * Dataset CSV: header `x1,...,xd[,label]`, one point per row, comma
 * delimited, `.` decimal separator. Labels are non-negative integers.
 */
struct LabeledCsv {
    Dataset dataset;
    std::optional<Partition> labels;
};

LabeledCsv read_dataset_csv(std::istream& in);
LabeledCsv read_dataset_csv(const std::string& path);

/// Coordinates use the shortest round-trip decimal form, so a write/read
/// cycle reproduces every double exactly.
void write_dataset_csv(std::ostream& out, const Dataset& dataset, const Partition* labels = nullptr);
void write_dataset_csv(const std::string& path, const Dataset& dataset, const Partition* labels = nullptr);

/// Single `label` column. Reading also accepts a dataset CSV with a
/// trailing label column.
Partition read_labels_csv(const std::string& path);
void write_labels_csv(std::ostream& out, const Partition& labels);
void write_labels_csv(const std::string& path, const Partition& labels);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

} // namespace centric

#endif
