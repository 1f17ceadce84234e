#include "centric/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace centric {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
    }
    return value;
}

int parse_label(std::string_view field, std::size_t line_no) {
    field = trim(field);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || value < 0) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": label must be a non-negative integer");
    }
    return value;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw std::runtime_error("failed to format double");
    }
    return std::string(buffer, ptr);
}

LabeledCsv read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV input");
    }
    const auto header = split_commas(line);
    bool has_label = false;
    std::size_t dim = header.size();
    if (!header.empty() && trim(header.back()) == "label") {
        has_label = true;
        --dim;
    }
    for (std::size_t c = 0; c < dim; ++c) {
        if (trim(header[c]) != "x" + std::to_string(c + 1)) {
            throw std::invalid_argument("CSV header must be x1,...,xd[,label]");
        }
    }
    if (dim == 0) {
        throw std::invalid_argument("CSV has no coordinate columns");
    }

    std::vector<double> coords;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            coords.push_back(parse_double(fields[c], line_no));
        }
        if (has_label) {
            labels.push_back(parse_label(fields.back(), line_no));
        }
    }

    LabeledCsv out{Dataset(dim, std::move(coords)), std::nullopt};
    if (has_label) {
        out.labels = Partition::from_labels(std::move(labels));
    }
    return out;
}

LabeledCsv read_dataset_csv(const std::string& path) {
    auto in = open_input(path);
    return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset, const Partition* labels) {
    if (labels != nullptr && labels->size() != dataset.size()) {
        throw std::invalid_argument("label count does not match dataset size");
    }
    for (std::size_t c = 0; c < dataset.dim(); ++c) {
        out << (c == 0 ? "" : ",") << 'x' << (c + 1);
    }
    if (labels != nullptr) {
        out << ",label";
    }
    out << '\n';
    for (Index i = 0; i < dataset.size(); ++i) {
        const auto p = dataset.point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            out << (c == 0 ? "" : ",") << format_double(p[c]);
        }
        if (labels != nullptr) {
            out << ',' << labels->label(i);
        }
        out << '\n';
    }
}

void write_dataset_csv(const std::string& path, const Dataset& dataset, const Partition* labels) {
    auto out = open_output(path);
    write_dataset_csv(out, dataset, labels);
}

Partition read_labels_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty label CSV");
    }
    const auto header = split_commas(line);
    if (header.empty() || trim(header.back()) != "label") {
        throw std::invalid_argument("label CSV needs a trailing 'label' column");
    }
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() != header.size()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": wrong field count");
        }
        labels.push_back(parse_label(fields.back(), line_no));
    }
    return Partition::from_labels(std::move(labels));
}

void write_labels_csv(std::ostream& out, const Partition& labels) {
    out << "label\n";
    for (int l : labels.labels()) {
        out << l << '\n';
    }
}

void write_labels_csv(const std::string& path, const Partition& labels) {
    auto out = open_output(path);
    write_labels_csv(out, labels);
}

} // namespace centric
