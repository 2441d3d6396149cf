#include "colliq/document.hpp"

#include <cstdio>
#include <utility>

#include <json.hpp>

namespace colliq {

using nlohmann::json;

const Colligation& Document::polydisc() const {
    if (is_ball()) {
        throw ArgumentError("document holds a ball colligation");
    }
    return std::get<Colligation>(model);
}

const BallColligation& Document::ball() const {
    if (!is_ball()) {
        throw ArgumentError("document holds a polydisc colligation");
    }
    return std::get<BallColligation>(model);
}

namespace {

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
        throw SchemaError("expected a [re, im] pair at " + path, path);
    }
    return {node[0].get<double>(), node[1].get<double>()};
}

CMatrix matrix_from_json(const json& node, std::size_t rows, std::size_t cols,
                         const std::string& path) {
    if (!node.is_array() || node.size() != rows) {
        throw SchemaError("expected " + std::to_string(rows) + " rows at " + path, path);
    }
    CMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = node[i];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols) {
            throw SchemaError("expected " + std::to_string(cols) + " entries at " + row_path,
                              row_path);
        }
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = complex_from_json(row[j], row_path + "[" + std::to_string(j) + "]");
        }
    }
    return out;
}

const json& field(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) {
        throw SchemaError(std::string("missing field ") + name, name);
    }
    return *it;
}

json common_header(std::string_view kind, Complex a, const Metadata& metadata) {
    json doc;
    doc["format_version"] = kDocumentFormatVersion;
    doc["kind"] = kind;
    doc["a"] = complex_to_json(a);
    if (!metadata.empty()) {
        doc["metadata"] = metadata;
    }
    return doc;
}

Metadata metadata_from_json(const json& doc) {
    Metadata metadata;
    if (const auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object()) {
            throw SchemaError("metadata must be a string map", "metadata");
        }
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) {
                throw SchemaError("metadata values must be strings", "metadata." + key);
            }
            metadata[key] = value.get<std::string>();
        }
    }
    return metadata;
}

std::vector<std::size_t> dims_from_json(const json& doc) {
    const json& node = field(doc, "partition");
    if (!node.is_array() || node.empty()) {
        throw SchemaError("partition must be a non-empty list", "partition");
    }
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number_unsigned()) {
            throw SchemaError("partition entries must be nonnegative integers",
                              "partition[" + std::to_string(i) + "]");
        }
        dims.push_back(node[i].get<std::size_t>());
    }
    return dims;
}

Document parse_polydisc(const json& doc) {
    SpacePartition partition{dims_from_json(doc), std::nullopt};
    if (const auto it = doc.find("split"); it != doc.end()) {
        if (!it->is_array() || it->size() != partition.dims.size()) {
            throw SchemaError("split must list one [m, n] pair per block", "split");
        }
        std::vector<std::pair<std::size_t, std::size_t>> split;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& pair = (*it)[i];
            const std::string path = "split[" + std::to_string(i) + "]";
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
                !pair[1].is_number_unsigned()) {
                throw SchemaError("expected an [m, n] pair at " + path, path);
            }
            split.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
        }
        partition.split = std::move(split);
    }
    try {
        partition.validate();
    } catch (const ArgumentError& e) {
        throw SchemaError(e.what(), "partition");
    }
    const std::size_t t = partition.total();
    const Complex a = complex_from_json(field(doc, "a"), "a");
    CMatrix b = matrix_from_json(field(doc, "B"), 1, t, "B");
    CMatrix c = matrix_from_json(field(doc, "C"), t, 1, "C");
    CMatrix d = matrix_from_json(field(doc, "D"), t, t, "D");
    return Document{make_colligation(a, std::move(b), std::move(c), std::move(d), std::move(partition)),
                    metadata_from_json(doc)};
}

Document parse_ball(const json& doc) {
    const std::vector<std::size_t> dims = dims_from_json(doc);
    const std::size_t vars = dims.size();
    const std::size_t dim = dims.front();
    for (std::size_t d : dims) {
        if (d != dim) {
            throw SchemaError("ball documents need equal per-variable dimensions", "partition");
        }
    }
    std::optional<std::pair<std::size_t, std::size_t>> split;
    if (const auto it = doc.find("split"); it != doc.end()) {
        if (!it->is_array() || it->size() != 1 || !(*it)[0].is_array() || (*it)[0].size() != 2 ||
            !(*it)[0][0].is_number_unsigned() || !(*it)[0][1].is_number_unsigned()) {
            throw SchemaError("ball split must be a single [d1, d2] pair", "split");
        }
        split = {(*it)[0][0].get<std::size_t>(), (*it)[0][1].get<std::size_t>()};
        if (split->first + split->second != dim) {
            throw SchemaError("ball split must sum to the component dimension", "split");
        }
    }
    const Complex a = complex_from_json(field(doc, "a"), "a");
    CMatrix b = matrix_from_json(field(doc, "B"), 1, dim, "B");
    CMatrix c = matrix_from_json(field(doc, "C"), vars * dim, 1, "C");
    CMatrix d = matrix_from_json(field(doc, "D"), vars * dim, dim, "D");
    return Document{
        make_ball_colligation(a, std::move(b), std::move(c), std::move(d), vars, dim, split),
        metadata_from_json(doc)};
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

Document parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed document at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + e.what(),
                         line, column);
    }
    if (!doc.is_object()) {
        throw SchemaError("document must be an object", "");
    }
    const json& version = field(doc, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kDocumentFormatVersion) {
        throw SchemaError("unsupported format_version", "format_version");
    }
    const json& kind = field(doc, "kind");
    if (kind == "polydisc") {
        return parse_polydisc(doc);
    }
    if (kind == "ball") {
        return parse_ball(doc);
    }
    throw SchemaError("kind must be \"polydisc\" or \"ball\"", "kind");
}

std::string serialize_document(const Colligation& v, const Metadata& metadata) {
    json doc = common_header("polydisc", v.a, metadata);
    doc["partition"] = v.partition.dims;
    if (v.partition.split) {
        json split = json::array();
        for (const auto& [m, n] : *v.partition.split) {
            split.push_back(json::array({m, n}));
        }
        doc["split"] = std::move(split);
    }
    doc["B"] = matrix_to_json(v.B);
    doc["C"] = matrix_to_json(v.C);
    doc["D"] = matrix_to_json(v.D);
    return doc.dump(2) + "\n";
}

std::string serialize_document(const BallColligation& v, const Metadata& metadata) {
    json doc = common_header("ball", v.a, metadata);
    doc["partition"] = std::vector<std::size_t>(v.vars, v.dim);
    if (v.split) {
        doc["split"] = json::array({json::array({v.split->first, v.split->second})});
    }
    doc["B"] = matrix_to_json(v.B);
    doc["C"] = matrix_to_json(v.C);
    doc["D"] = matrix_to_json(v.D);
    return doc.dump(2) + "\n";
}

std::string grid_report_csv(const GridReport& report, std::size_t vars) {
    std::string out;
    for (std::size_t i = 0; i < vars; ++i) {
        const std::string var = "z" + std::to_string(i + 1);
        out += var + "_re," + var + "_im,";
    }
    out += "value_re,value_im,modulus\n";
    char buf[64];
    const auto append = [&](double x, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", x, sep);
        out += buf;
    };
    for (std::size_t k = 0; k < report.values.size(); ++k) {
        for (std::size_t i = 0; i < vars; ++i) {
            append(report.points[k][i].real(), ',');
            append(report.points[k][i].imag(), ',');
        }
        append(report.values[k].real(), ',');
        append(report.values[k].imag(), ',');
        append(std::abs(report.values[k]), '\n');
    }
    return out;
}

} // namespace colliq
