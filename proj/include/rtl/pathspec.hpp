// Line-oriented path description files.
//
//   # comment
//   class T
//   pattern bell_matched
//   link MM> 1 pr=0.01 nt=1460
//   link MIM 3/2
//   fire 1 0          (custom pattern only, one line per link)
//
// Link kinds: MM> (sender-receiver), MM< (receiver-sender), MIM, MSM.
// Latencies and fire times are exact rationals ("3/2") or finite decimals
// ("1.5"). Defaults: class T, pattern bell_matched, pr=0.01, nt=1460.

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtl/model.hpp"
#include "rtl/timing.hpp"

namespace rtl::pathspec {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                             ": " + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

struct PathSpec {
    Path path;
    AppClass app_class = AppClass::T;
    std::optional<timing::NamedPattern> pattern = timing::NamedPattern::BellMatched;
    std::vector<Rational> custom_fires; // set when pattern is nullopt (custom)

    timing::Schedule schedule() const {
        if (pattern) return timing::make_schedule(path, *pattern);
        timing::Schedule s;
        s.fire_times = custom_fires;
        s.pattern_tag = "custom";
        return s;
    }
};

inline constexpr double kDefaultReceptionProb = 0.01;
inline constexpr std::int64_t kDefaultTransmitters = 1460;

inline std::optional<timing::NamedPattern> parse_pattern_name(std::string_view s) {
    using timing::NamedPattern;
    if (s == "flat") return NamedPattern::Flat;
    if (s == "forward") return NamedPattern::ForwardTrigger;
    if (s == "bell_matched") return NamedPattern::BellMatched;
    if (s == "ridge_fold") return NamedPattern::RidgeFold;
    if (s == "valley_fold") return NamedPattern::ValleyFold;
    return std::nullopt;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

inline std::optional<LinkKind> parse_kind(std::string_view s) {
    if (s == "MM>") return LinkKind::SenderReceiver;
    if (s == "MM<") return LinkKind::ReceiverSender;
    if (s == "MIM") return LinkKind::MeetInTheMiddle;
    if (s == "MSM") return LinkKind::MidpointSource;
    return std::nullopt;
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace detail

inline PathSpec parse_path_file(std::string_view text) {
    PathSpec spec;
    bool saw_class = false;
    bool saw_pattern = false;
    bool custom = false;
    struct FireLine {
        std::size_t index;
        Rational time;
        std::size_t line;
        std::size_t column;
    };
    std::vector<FireLine> fires;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t last_line = 1;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        last_line = line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        auto tokens = detail::tokenize(line);
        if (tokens.empty() || tokens[0].text.front() == '#') continue;

        std::string_view directive = tokens[0].text;
        if (directive == "class") {
            if (saw_class) throw ParseError(line_no, tokens[0].column, "duplicate class directive");
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "class directive needs one argument");
            if (tokens[1].text == "B") spec.app_class = AppClass::B;
            else if (tokens[1].text == "C") spec.app_class = AppClass::C;
            else if (tokens[1].text == "T") spec.app_class = AppClass::T;
            else
                throw ParseError(line_no, tokens[1].column,
                                 "unknown class '" + std::string(tokens[1].text) + "' (expected B, C, or T)");
            saw_class = true;
        } else if (directive == "pattern") {
            if (saw_pattern)
                throw ParseError(line_no, tokens[0].column, "duplicate pattern directive");
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "pattern directive needs one argument");
            if (tokens[1].text == "custom") {
                custom = true;
                spec.pattern.reset();
            } else if (auto p = parse_pattern_name(tokens[1].text)) {
                spec.pattern = *p;
            } else {
                throw ParseError(line_no, tokens[1].column,
                                 "unknown pattern '" + std::string(tokens[1].text) + "'");
            }
            saw_pattern = true;
        } else if (directive == "link") {
            if (tokens.size() < 3)
                throw ParseError(line_no, tokens[0].column,
                                 "link directive needs a kind and a latency");
            auto kind = detail::parse_kind(tokens[1].text);
            if (!kind)
                throw ParseError(line_no, tokens[1].column,
                                 "unknown link kind '" + std::string(tokens[1].text) + "'");
            auto latency = Rational::parse(tokens[2].text);
            if (!latency)
                throw ParseError(line_no, tokens[2].column,
                                 "malformed latency '" + std::string(tokens[2].text) + "'");
            if (!(*latency > Rational(0)))
                throw ParseError(line_no, tokens[2].column, "latency must be positive");
            Link link{*kind, *latency, kDefaultReceptionProb, kDefaultTransmitters};
            bool saw_pr = false, saw_nt = false;
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                std::string_view t = tokens[i].text;
                if (t.rfind("pr=", 0) == 0) {
                    if (saw_pr) throw ParseError(line_no, tokens[i].column, "duplicate pr= field");
                    std::string_view v = t.substr(3);
                    double pr = 0.0;
                    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), pr);
                    if (ec != std::errc{} || p != v.data() + v.size())
                        throw ParseError(line_no, tokens[i].column,
                                         "malformed pr value '" + std::string(v) + "'");
                    if (!(pr > 0.0) || pr > 1.0)
                        throw ParseError(line_no, tokens[i].column, "pr must be in (0,1]");
                    link.reception_prob = pr;
                    saw_pr = true;
                } else if (t.rfind("nt=", 0) == 0) {
                    if (saw_nt) throw ParseError(line_no, tokens[i].column, "duplicate nt= field");
                    std::string_view v = t.substr(3);
                    std::int64_t nt = 0;
                    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), nt);
                    if (ec != std::errc{} || p != v.data() + v.size())
                        throw ParseError(line_no, tokens[i].column,
                                         "malformed nt value '" + std::string(v) + "'");
                    if (nt < 1)
                        throw ParseError(line_no, tokens[i].column, "nt must be >= 1");
                    link.transmitters = nt;
                    saw_nt = true;
                } else {
                    throw ParseError(line_no, tokens[i].column,
                                     "unexpected token '" + std::string(t) + "' on link line");
                }
            }
            spec.path.links.push_back(link);
        } else if (directive == "fire") {
            if (tokens.size() != 3)
                throw ParseError(line_no, tokens[0].column,
                                 "fire directive needs a link index and a time");
            std::size_t index = 0;
            {
                std::string_view v = tokens[1].text;
                auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), index);
                if (ec != std::errc{} || p != v.data() + v.size() || index < 1)
                    throw ParseError(line_no, tokens[1].column,
                                     "malformed link index '" + std::string(v) + "'");
            }
            auto time = Rational::parse(tokens[2].text);
            if (!time)
                throw ParseError(line_no, tokens[2].column,
                                 "malformed fire time '" + std::string(tokens[2].text) + "'");
            fires.push_back({index, *time, line_no, tokens[0].column});
        } else {
            throw ParseError(line_no, tokens[0].column,
                             "unknown directive '" + std::string(directive) + "'");
        }
    }

    if (spec.path.links.empty())
        throw ParseError(last_line, 1, "path file must contain at least one link line");

    const std::size_t h = spec.path.hops();
    if (!custom && !fires.empty())
        throw ParseError(fires[0].line, fires[0].column,
                         "fire lines require 'pattern custom'");
    if (custom) {
        spec.custom_fires.assign(h, Rational(0));
        std::vector<bool> seen(h, false);
        for (const FireLine& f : fires) {
            if (f.index > h)
                throw ParseError(f.line, f.column,
                                 "fire index " + std::to_string(f.index) + " exceeds link count " +
                                     std::to_string(h));
            if (seen[f.index - 1])
                throw ParseError(f.line, f.column,
                                 "duplicate fire line for link " + std::to_string(f.index));
            seen[f.index - 1] = true;
            spec.custom_fires[f.index - 1] = f.time;
        }
        for (std::size_t j = 0; j < h; ++j)
            if (!seen[j])
                throw ParseError(last_line, 1,
                                 "custom pattern is missing a fire line for link " +
                                     std::to_string(j + 1));
    }
    return spec;
}

/// Canonical re-emission: every field explicit, stable ordering, exact
/// rationals. parse(canonical_text(parse(f))) reproduces the same spec.
inline std::string canonical_text(const PathSpec& spec) {
    std::string out;
    out += "class ";
    out += to_string(spec.app_class);
    out += '\n';
    out += "pattern ";
    out += spec.pattern ? timing::to_string(*spec.pattern) : "custom";
    out += '\n';
    for (const Link& l : spec.path.links) {
        out += "link ";
        out += to_string(l.kind);
        out += ' ';
        out += l.latency.str();
        out += " pr=";
        out += detail::format_double(l.reception_prob);
        out += " nt=";
        out += std::to_string(l.transmitters);
        out += '\n';
    }
    if (!spec.pattern) {
        for (std::size_t j = 0; j < spec.custom_fires.size(); ++j) {
            out += "fire ";
            out += std::to_string(j + 1);
            out += ' ';
            out += spec.custom_fires[j].str();
            out += '\n';
        }
    }
    return out;
}

} // namespace rtl::pathspec
