#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "colliq/ball.hpp"
#include "colliq/colligation.hpp"

namespace colliq {

inline constexpr int kDocumentFormatVersion = 1;

using Metadata = std::map<std::string, std::string>;

/// A parsed document: either a polydisc or a ball colligation, plus the
/// free-form metadata it carried.
struct Document {
    std::variant<Colligation, BallColligation> model;
    Metadata metadata;

    bool is_ball() const { return std::holds_alternative<BallColligation>(model); }
    const Colligation& polydisc() const;
    const BallColligation& ball() const;
};

/// Parses a UTF-8 JSON document. Malformed text raises ParseError with line
/// and column; well-formed text with bad shapes raises SchemaError carrying
/// the offending field path.
Document parse_document(std::string_view text);

std::string serialize_document(const Colligation& v, const Metadata& metadata = {});
std::string serialize_document(const BallColligation& v, const Metadata& metadata = {});

/// CSV rendering of a grid report: interleaved re/im point coordinates, the
/// value's re/im, and its modulus, one row per point, with a header row.
std::string grid_report_csv(const GridReport& report, std::size_t vars);

} // namespace colliq
