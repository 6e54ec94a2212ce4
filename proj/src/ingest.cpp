#include "blinkbench/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "blinkbench/errors.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

namespace {

// Splits source into lines, tolerating CRLF endings.
std::vector<std::string> to_lines(std::string_view source) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t pos = source.find('\n', start);
        std::string_view line;
        if (pos == std::string_view::npos) {
            line = source.substr(start);
            start = source.size() + 1;
        } else {
            line = source.substr(start, pos - start);
            start = pos + 1;
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"'))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

int parse_label_token(const std::string& token, std::size_t line_no) {
    const std::string t = trim(token);
    if (t == "0") return 0;
    if (t == "1") return 1;
    // Accept numeric spellings like 0.0 / 1.0 but nothing outside {0,1}.
    double v = parse_double(t, "class value (line " + std::to_string(line_no) + ")");
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw ParseError("class value outside {0,1}: '" + t + "' (line " +
                     std::to_string(line_no) + ")");
}

struct ArffAttribute {
    std::string name;
    bool nominal_binary = false;  // declared as {0,1}
    bool numeric = false;
};

ArffAttribute parse_attribute_decl(const std::string& rest, std::size_t line_no) {
    // rest is everything after "@attribute". Name may be quoted; the type is
    // either a numeric keyword or a nominal value list in braces.
    std::string body = trim(rest);
    if (body.empty()) {
        throw ParseError("attribute declaration without name (line " +
                         std::to_string(line_no) + ")");
    }
    std::string name;
    std::size_t pos = 0;
    if (body[0] == '\'' || body[0] == '"') {
        const char q = body[0];
        std::size_t close = body.find(q, 1);
        if (close == std::string::npos) {
            throw ParseError("unterminated quoted attribute name (line " +
                             std::to_string(line_no) + ")");
        }
        name = body.substr(1, close - 1);
        pos = close + 1;
    } else {
        std::size_t sp = body.find_first_of(" \t");
        if (sp == std::string::npos) {
            throw ParseError("attribute '" + body + "' has no type (line " +
                             std::to_string(line_no) + ")");
        }
        name = body.substr(0, sp);
        pos = sp;
    }
    std::string type = trim(body.substr(pos));
    if (type.empty()) {
        throw ParseError("attribute '" + name + "' has no type (line " +
                         std::to_string(line_no) + ")");
    }
    ArffAttribute attr;
    attr.name = name;
    if (type[0] == '{') {
        if (type.back() != '}') {
            throw ParseError("unterminated nominal specification for '" + name +
                             "' (line " + std::to_string(line_no) + ")");
        }
        std::vector<std::string> vals = split(type.substr(1, type.size() - 2), ',');
        for (auto& v : vals) v = unquote(trim(v));
        if (vals.size() != 2 ||
            !((vals[0] == "0" && vals[1] == "1") || (vals[0] == "1" && vals[1] == "0"))) {
            throw ParseError("nominal attribute '" + name +
                             "' is not binary {0,1} (line " + std::to_string(line_no) + ")");
        }
        attr.nominal_binary = true;
    } else {
        const std::string t = to_lower(type);
        if (t == "numeric" || t == "real" || t == "integer") {
            attr.numeric = true;
        } else {
            throw ParseError("unsupported attribute type '" + type + "' for '" + name +
                             "' (line " + std::to_string(line_no) + ")");
        }
    }
    return attr;
}

}  // namespace

Recording parse_arff(std::string_view source, int sample_rate_hz) {
    std::vector<ArffAttribute> attrs;
    bool seen_relation = false;
    bool in_data = false;

    Recording rec;
    rec.sample_rate_hz = sample_rate_hz;

    const std::vector<std::string> lines = to_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string line = trim(lines[i]);
        if (line.empty() || line[0] == '%') continue;

        if (!in_data && line[0] == '@') {
            std::size_t sp = line.find_first_of(" \t");
            const std::string keyword = to_lower(sp == std::string::npos ? line : line.substr(0, sp));
            const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
            if (keyword == "@relation") {
                seen_relation = true;
            } else if (keyword == "@attribute") {
                attrs.push_back(parse_attribute_decl(rest, line_no));
            } else if (keyword == "@data") {
                if (attrs.size() < 2) {
                    throw ParseError("@data before at least two attributes (line " +
                                     std::to_string(line_no) + ")");
                }
                for (std::size_t a = 0; a + 1 < attrs.size(); ++a) {
                    if (!attrs[a].numeric) {
                        throw ParseError("channel attribute '" + attrs[a].name +
                                         "' is not numeric");
                    }
                }
                const ArffAttribute& cls = attrs.back();
                if (!cls.nominal_binary && !cls.numeric) {
                    throw ParseError("class attribute '" + cls.name + "' is not binary");
                }
                rec.channels.resize(attrs.size() - 1);
                for (std::size_t a = 0; a + 1 < attrs.size(); ++a) {
                    rec.channels[a].name = attrs[a].name;
                }
                in_data = true;
            } else {
                throw ParseError("unknown ARFF keyword '" + keyword + "' (line " +
                                 std::to_string(line_no) + ")");
            }
            continue;
        }

        if (!in_data) {
            throw ParseError("data before @data section (line " + std::to_string(line_no) + ")");
        }
        if (line[0] == '{') {
            throw ParseError("sparse ARFF rows are not supported (line " +
                             std::to_string(line_no) + ")");
        }
        std::vector<std::string> fields = split(line, ',');
        if (fields.size() != attrs.size()) {
            throw RaggedRow("expected " + std::to_string(attrs.size()) + " fields, got " +
                            std::to_string(fields.size()) + " (line " +
                            std::to_string(line_no) + ")");
        }
        for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
            rec.channels[a].values.push_back(
                parse_double(fields[a], "attribute '" + attrs[a].name + "' (line " +
                                            std::to_string(line_no) + ")"));
        }
        rec.labels.push_back(parse_label_token(fields.back(), line_no));
    }

    if (!seen_relation && attrs.empty()) {
        throw ParseError("not an ARFF document (no @relation/@attribute header)");
    }
    if (!in_data) {
        throw ParseError("missing @data section");
    }
    if (rec.labels.empty()) {
        throw EmptyData("ARFF document has a header but no data rows");
    }
    rec.validate();
    return rec;
}

bool csv_has_header(std::string_view source) {
    const std::vector<std::string> lines = to_lines(source);
    for (const auto& raw : lines) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        for (const auto& field : split(line, ',')) {
            const std::string t = trim(field);
            double v = 0.0;
            const char* first = t.data();
            const char* last = t.data() + t.size();
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last) return true;
        }
        return false;
    }
    return false;
}

Recording parse_csv(std::string_view source, bool has_header, int sample_rate_hz) {
    Recording rec;
    rec.sample_rate_hz = sample_rate_hz;

    std::size_t expected_fields = 0;
    bool header_pending = has_header;

    const std::vector<std::string> lines = to_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string line = trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::string> fields = split(line, ',');
        if (header_pending) {
            header_pending = false;
            if (fields.size() < 3) {
                throw ParseError("CSV needs at least two channel columns plus a label column");
            }
            expected_fields = fields.size();
            rec.channels.resize(fields.size() - 1);
            for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
                rec.channels[a].name = unquote(trim(fields[a]));
            }
            continue;
        }
        if (expected_fields == 0) {
            if (fields.size() < 3) {
                throw ParseError("CSV needs at least two channel columns plus a label column");
            }
            expected_fields = fields.size();
            rec.channels.resize(fields.size() - 1);
            for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
                char buf[16];
                std::snprintf(buf, sizeof(buf), "ch%zu", a + 1);
                rec.channels[a].name = buf;
            }
        }
        if (fields.size() != expected_fields) {
            throw RaggedRow("expected " + std::to_string(expected_fields) + " fields, got " +
                            std::to_string(fields.size()) + " (line " +
                            std::to_string(line_no) + ")");
        }
        for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
            rec.channels[a].values.push_back(
                parse_double(fields[a], "column " + std::to_string(a + 1) + " (line " +
                                            std::to_string(line_no) + ")"));
        }
        rec.labels.push_back(parse_label_token(fields.back(), line_no));
    }

    if (rec.labels.empty()) {
        throw EmptyData("CSV document has no data rows");
    }
    rec.validate();
    return rec;
}

std::string write_csv(const Recording& rec) {
    std::ostringstream out;
    for (const auto& ch : rec.channels) out << ch.name << ',';
    out << "label\n";
    for (std::size_t t = 0; t < rec.length(); ++t) {
        for (const auto& ch : rec.channels) out << format_double(ch.values[t]) << ',';
        out << rec.labels[t] << '\n';
    }
    return out.str();
}

std::string write_arff(const Recording& rec, std::string_view relation, int precision) {
    std::ostringstream out;
    out << "@relation " << relation << "\n\n";
    for (const auto& ch : rec.channels) {
        out << "@attribute " << ch.name << " numeric\n";
    }
    out << "@attribute eyeDetection {0,1}\n\n@data\n";
    char buf[40];
    for (std::size_t t = 0; t < rec.length(); ++t) {
        for (const auto& ch : rec.channels) {
            std::snprintf(buf, sizeof(buf), "%.*f", precision, ch.values[t]);
            out << buf << ',';
        }
        out << rec.labels[t] << '\n';
    }
    return out.str();
}

SummaryStats summarize(const Recording& rec) {
    SummaryStats s;
    s.rows = rec.length();
    for (const auto& ch : rec.channels) {
        ChannelStats cs;
        cs.name = ch.name;
        cs.min = ch.values.front();
        cs.max = ch.values.front();
        for (double v : ch.values) {
            if (v < cs.min) cs.min = v;
            if (v > cs.max) cs.max = v;
        }
        cs.mean = mean(ch.values);
        s.channels.push_back(cs);
    }
    for (int l : rec.labels) ++s.label_count[l];
    for (std::size_t i = 1; i < rec.labels.size(); ++i) {
        if (rec.labels[i] != rec.labels[i - 1]) ++s.transition_count;
    }
    return s;
}

std::string summary_to_json(const SummaryStats& s) {
    nlohmann::json j;
    j["rows"] = s.rows;
    j["label_counts"] = {{"0", s.label_count[0]}, {"1", s.label_count[1]}};
    j["transition_count"] = s.transition_count;
    j["channels"] = nlohmann::json::array();
    for (const auto& c : s.channels) {
        j["channels"].push_back(
            {{"name", c.name}, {"min", c.min}, {"mean", c.mean}, {"max", c.max}});
    }
    return j.dump(2);
}

std::string summary_label_csv(const SummaryStats& s) {
    std::ostringstream out;
    out << "label,count\n0," << s.label_count[0] << "\n1," << s.label_count[1] << "\n";
    return out.str();
}

}  // namespace blinkbench
