#include "frids/report.hpp"

#include "frids/errors.hpp"
#include "frids/text.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace frids {

namespace {

const char* kCategoryOrder[] = {"normal", "probe", "dos", "u2r", "r2l"};

std::string rate_or_undefined(const std::optional<double>& value) {
    return value ? format_double(*value) : "undefined";
}

} // namespace

std::string render_report(const ReportInputs& inputs) {
    std::ostringstream out;
    out << "frids-report-v1\n";
    if (inputs.timestamps) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        out << "generated_at: " << buf << "\n";
    }

    out << "\n[dataset]\n";
    out << "total: " << inputs.summary.total << "\n";
    for (std::size_t c = 0; c < kCategoryCount; ++c)
        out << kCategoryOrder[c] << ": " << inputs.summary.counts[c] << "\n";

    out << "\n[rules]\n";
    if (inputs.ruleset && !inputs.ruleset->rules.empty()) {
        out << "count: " << inputs.ruleset->rules.size() << "\n";
        for (const auto& entry : inputs.ruleset->rules)
            out << "rule: " << rule_to_text(entry.rule, inputs.ruleset->space)
                << " [threshold: " << format_double(entry.threshold) << "]\n";
    } else {
        out << "count: 0\n";
    }

    out << "\n[metrics]\n";
    out << "records: " << inputs.metrics.total << "\n";
    out << "detection_rate: " << rate_or_undefined(inputs.metrics.detection_rate) << "\n";
    out << "false_positive_rate: " << rate_or_undefined(inputs.metrics.false_positive_rate)
        << "\n";
    for (std::size_t c = 0; c < kCategoryCount; ++c)
        out << "recall_" << kCategoryOrder[c] << ": "
            << rate_or_undefined(inputs.metrics.recall[c]) << "\n";
    out << "matrix_columns: normal probe dos u2r r2l\n";
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        out << "matrix_" << kCategoryOrder[c] << ":";
        for (std::size_t p = 0; p < kCategoryCount; ++p)
            out << " " << inputs.metrics.matrix[c][p];
        out << "\n";
    }

    out << "\n[alerts]\n";
    std::size_t suppressed = 0;
    for (const auto& alert : inputs.alerts)
        if (alert.suppressed)
            ++suppressed;
    out << "count: " << inputs.alerts.size() << "\n";
    out << "suppressed: " << suppressed << "\n";
    out << "columns: index,category,degree,priority,suppressed\n";
    for (const auto& alert : inputs.alerts)
        out << "alert: " << alert.record_index << "," << to_string(alert.category) << ","
            << format_double(alert.degree) << "," << to_string(alert.priority) << ","
            << (alert.suppressed ? '1' : '0') << "\n";

    out << "\n[history]\n";
    out << "columns: target,generation,best,mean\n";
    if (inputs.ruleset) {
        for (const auto& entry : inputs.ruleset->rules)
            for (const auto& row : entry.history)
                out << "row: " << to_string(entry.rule.target) << "," << row.generation
                    << "," << format_double(row.best) << "," << format_double(row.mean)
                    << "\n";
    }

    out << "\n[end]\n";
    return out.str();
}

void write_report(const ReportInputs& inputs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write report file: " + path);
    out << render_report(inputs);
    if (!out)
        throw InputError("I/O error while writing report: " + path);
}

namespace {

std::optional<double> parse_rate(const std::string& value, const std::string& key) {
    if (value == "undefined")
        return std::nullopt;
    const auto parsed = parse_double(value);
    if (!parsed)
        throw InputError("report: bad number for " + key + ": '" + value + "'");
    return parsed;
}

std::size_t category_slot(const std::string& name) {
    const auto category = category_from_string(name);
    if (!category)
        throw InputError("report: unknown category '" + name + "'");
    return static_cast<std::size_t>(*category);
}

} // namespace

ParsedReport parse_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "frids-report-v1")
        throw InputError("report: missing frids-report-v1 header");

    ParsedReport parsed;
    std::string section;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.front() == '[') {
            section = line;
            continue;
        }
        const auto colon = line.find(": ");
        if (colon == std::string::npos)
            continue;
        const std::string key = line.substr(0, colon);
        const std::string value = line.substr(colon + 2);

        if (section == "[dataset]") {
            if (key == "total")
                parsed.summary.total = std::stoull(value);
            else if (category_from_string(key))
                parsed.summary.counts[category_slot(key)] = std::stoull(value);
        } else if (section == "[metrics]") {
            if (key == "records")
                parsed.metrics.total = std::stoull(value);
            else if (key == "detection_rate")
                parsed.metrics.detection_rate = parse_rate(value, key);
            else if (key == "false_positive_rate")
                parsed.metrics.false_positive_rate = parse_rate(value, key);
            else if (key.rfind("recall_", 0) == 0)
                parsed.metrics.recall[category_slot(key.substr(7))] =
                    parse_rate(value, key);
            else if (key.rfind("matrix_", 0) == 0 && key != "matrix_columns") {
                const std::size_t row = category_slot(key.substr(7));
                std::istringstream cells(value);
                for (std::size_t p = 0; p < kCategoryCount; ++p)
                    if (!(cells >> parsed.metrics.matrix[row][p]))
                        throw InputError("report: short matrix row: " + key);
            }
        } else if (section == "[alerts]") {
            if (key == "count")
                parsed.alert_count = std::stoull(value);
            else if (key == "suppressed")
                parsed.suppressed_count = std::stoull(value);
        }
    }
    return parsed;
}

ParsedReport read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open report file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_report(text);
}

} // namespace frids
