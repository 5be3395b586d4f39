#include "latmc/cli/csv.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "latmc/cli/run_config.hpp"
#include "latmc/errors.hpp"

namespace latmc::cli {

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!line.empty())
            lines.push_back(line);
        pos = end + 1;
    }
    return lines;
}

std::vector<std::string_view> fields_of(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        fields.push_back(line.substr(pos, comma == std::string_view::npos ? line.size() - pos
                                                                          : comma - pos));
        if (comma == std::string_view::npos)
            return fields;
        pos = comma + 1;
    }
}

template <class T>
T parse_field(std::string_view field) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("csv: malformed field '" + std::string(field) + "'");
    return value;
}

std::vector<std::vector<std::string_view>> rows_with_header(std::string_view text,
                                                            std::string_view header,
                                                            std::size_t columns) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != header)
        throw ParseError("csv: expected header '" + std::string(header) + "'");
    std::vector<std::vector<std::string_view>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = fields_of(lines[i]);
        if (fields.size() != columns)
            throw ParseError("csv: row " + std::to_string(i) + " has " + std::to_string(fields.size()) +
                             " fields");
        rows.push_back(std::move(fields));
    }
    return rows;
}

} // namespace

std::string series_csv(const TimeSeries& series) {
    std::string out = "step,W,U,m\n";
    for (const auto& row : series) {
        out += std::to_string(row.step);
        out += ',';
        out += format_double(row.w);
        out += ',';
        out += std::to_string(row.u);
        out += ',';
        out += format_double(row.m);
        out += '\n';
    }
    return out;
}

TimeSeries parse_series_csv(std::string_view text) {
    TimeSeries series;
    for (const auto& f : rows_with_header(text, "step,W,U,m", 4))
        series.append({parse_field<std::uint64_t>(f[0]), parse_field<double>(f[1]),
                       parse_field<std::uint64_t>(f[2]), parse_field<double>(f[3])});
    return series;
}

std::string clusters_csv(const ClusterReport& report) {
    std::string out = "cluster_id,size\n";
    for (std::size_t id = 0; id < report.sizes.size(); ++id)
        out += std::to_string(id) + ',' + std::to_string(report.sizes[id]) + '\n';
    return out;
}

ClusterReport parse_clusters_csv(std::string_view text) {
    ClusterLabeling labeling;
    std::vector<std::size_t> sizes;
    for (const auto& f : rows_with_header(text, "cluster_id,size", 2)) {
        if (parse_field<std::size_t>(f[0]) != sizes.size())
            throw ParseError("csv: cluster ids must run 0, 1, 2, ...");
        const auto size = parse_field<std::size_t>(f[1]);
        if (size == 0)
            throw ParseError("csv: cluster size must be positive");
        sizes.push_back(size);
    }
    // Rebuild through report() so derived fields follow the same rules.
    labeling.n_clusters = sizes.size();
    for (std::size_t id = 0; id < sizes.size(); ++id)
        labeling.labels.insert(labeling.labels.end(), sizes[id], static_cast<std::int32_t>(id));
    return report(labeling);
}

std::string cluster_summary_csv(const ClusterReport& r) {
    return "n_clusters,U,largest,mean_size,weighted_mean_size\n" + std::to_string(r.n_clusters) + ',' +
           std::to_string(r.total) + ',' + std::to_string(r.largest) + ',' + format_double(r.mean_size) +
           ',' + format_double(r.weighted_mean_size) + '\n';
}

std::string marginal_csv(const std::map<double, double>& table) {
    std::string out = "value,probability\n";
    for (const auto& [value, p] : table)
        out += format_double(value) + ',' + format_double(p) + '\n';
    return out;
}

} // namespace latmc::cli
