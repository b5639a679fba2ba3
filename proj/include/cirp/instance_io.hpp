#pragma once

// Instance readers and the canonical writer.
//
// Canonical files are JSON documents (see docs/formats.md). The two legacy
// readers accept a keyed, whitespace-separated text layout:
//
//   NAME <token>
//   HORIZON <H>
//   VEHICLES <K>
//   CAPACITY <Q>
//   DEPOT <x> <y>                      (cirplib only; required there)
//   CUSTOMERS <n>
//   <n lines>                          cirplib: id x y rate init min max end
//                                      roadef:  id rate init min max end
//   TRAVEL_TIME                        (roadef: required, cirplib: optional)
//   <n+1 lines of n+1 values>
//   TRAVEL_COST                        (same rules as TRAVEL_TIME)
//   <n+1 lines of n+1 values>
//
// Blank lines and lines starting with '#' are ignored; keywords are case
// insensitive. When cirplib matrices are absent both are the Euclidean
// distances rounded to two decimals. Any other keyword is rejected with the
// offending line number.

#include <charconv>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cirp/instance.hpp"

namespace cirp {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InstanceFormat { canonical, cirplib, roadef_adapted };

inline InstanceFormat parse_instance_format(std::string_view s) {
    if (s == "canonical" || s == "json") return InstanceFormat::canonical;
    if (s == "cirplib") return InstanceFormat::cirplib;
    if (s == "roadef" || s == "roadef_adapted" || s == "roadef-adapted") return InstanceFormat::roadef_adapted;
    throw ParseError("unknown instance format '" + std::string(s) + "'");
}

inline std::string_view to_string(InstanceFormat f) {
    switch (f) {
    case InstanceFormat::canonical: return "canonical";
    case InstanceFormat::cirplib: return "cirplib";
    case InstanceFormat::roadef_adapted: return "roadef_adapted";
    }
    return "?";
}

// Guess from the file extension: .json is canonical, everything else cirplib.
inline InstanceFormat guess_instance_format(const std::filesystem::path& p) {
    return p.extension() == ".json" ? InstanceFormat::canonical : InstanceFormat::cirplib;
}

// Euclidean distance rounded to two decimals.
inline double rounded_distance(std::pair<double, double> a, std::pair<double, double> b) {
    const double d = std::hypot(a.first - b.first, a.second - b.second);
    return std::round(d * 100.0) / 100.0;
}

// ---------------------------------------------------------------------------
// Canonical JSON

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json matrix_to_json(const SquareMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline SquareMatrix matrix_from_json(const nlohmann::json& j, const char* key) {
    if (!j.is_array()) throw ParseError(std::string(key) + " must be an array of rows");
    SquareMatrix m(j.size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != j.size())
            throw ParseError(std::string(key) + " row " + std::to_string(r) + " must have " + std::to_string(j.size()) +
                             " entries");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!row[c].is_number())
                throw ParseError(std::string(key) + "[" + std::to_string(r) + "][" + std::to_string(c) +
                                 "] is not a number");
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> known,
                                const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (auto kk : known) ok = ok || k == kk;
        if (!ok) throw ParseError("unknown key '" + k + "' in " + where);
    }
}

template <class T>
T required(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError("missing key '" + std::string(key) + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad value for '" + std::string(key) + "' in " + where + ": " + e.what());
    }
}

inline std::optional<std::pair<double, double>> coords_from_json(const nlohmann::json& obj, const std::string& where) {
    if (!obj.contains("coords")) return std::nullopt;
    const auto& c = obj.at("coords");
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw ParseError("coords in " + where + " must be [x, y]");
    return std::make_pair(c[0].get<double>(), c[1].get<double>());
}

} // namespace detail

inline std::string to_canonical_json(const Instance& inst) {
    using detail::ordered_json;
    ordered_json doc;
    doc["format"] = "cirp-canonical";
    doc["version"] = 1;
    doc["name"] = inst.name;
    doc["units"] = {{"time", "1 time unit"}, {"product", "1 product unit"}, {"cost", "1 cost unit"}};
    doc["horizon"] = inst.horizon;
    doc["fleet_size"] = inst.fleet_size;
    doc["capacity"] = inst.capacity;
    if (inst.depot_coords) doc["depot"] = {{"coords", {inst.depot_coords->first, inst.depot_coords->second}}};
    ordered_json cs = ordered_json::array();
    for (const Customer& c : inst.customers) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["rate"] = c.rate;
        jc["inv_init"] = c.inv_init;
        jc["inv_min"] = c.inv_min;
        jc["inv_max"] = c.inv_max;
        jc["inv_end_target"] = c.inv_end_target;
        if (c.coords) jc["coords"] = {c.coords->first, c.coords->second};
        cs.push_back(std::move(jc));
    }
    doc["customers"] = std::move(cs);
    doc["travel_time"] = detail::matrix_to_json(inst.travel_time);
    doc["travel_cost"] = detail::matrix_to_json(inst.travel_cost);
    return doc.dump(2) + "\n";
}

// Parses without validating.
inline Instance parse_canonical(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed canonical instance: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("canonical instance must be a JSON object");
    detail::reject_unknown_keys(doc,
                                {"format", "version", "name", "units", "horizon", "fleet_size", "capacity", "depot",
                                 "customers", "travel_time", "travel_cost"},
                                "instance");
    if (doc.value("format", std::string{}) != "cirp-canonical")
        throw ParseError("canonical instance must declare \"format\": \"cirp-canonical\"");
    if (doc.value("version", 0) != 1) throw ParseError("unsupported canonical version");

    Instance inst;
    inst.name = doc.value("name", std::string{});
    inst.horizon = detail::required<double>(doc, "horizon", "instance");
    inst.fleet_size = detail::required<int>(doc, "fleet_size", "instance");
    inst.capacity = detail::required<double>(doc, "capacity", "instance");
    if (doc.contains("depot")) {
        detail::reject_unknown_keys(doc["depot"], {"coords"}, "depot");
        inst.depot_coords = detail::coords_from_json(doc["depot"], "depot");
    }
    if (!doc.contains("customers") || !doc["customers"].is_array())
        throw ParseError("missing customers array");
    for (std::size_t k = 0; k < doc["customers"].size(); ++k) {
        const auto& jc = doc["customers"][k];
        const std::string where = "customers[" + std::to_string(k) + "]";
        detail::reject_unknown_keys(jc, {"id", "rate", "inv_init", "inv_min", "inv_max", "inv_end_target", "coords"},
                                    where);
        Customer c;
        c.id = detail::required<int>(jc, "id", where);
        c.rate = detail::required<double>(jc, "rate", where);
        c.inv_init = detail::required<double>(jc, "inv_init", where);
        c.inv_min = detail::required<double>(jc, "inv_min", where);
        c.inv_max = detail::required<double>(jc, "inv_max", where);
        c.inv_end_target = detail::required<double>(jc, "inv_end_target", where);
        c.coords = detail::coords_from_json(jc, where);
        inst.customers.push_back(c);
    }
    if (!doc.contains("travel_time")) throw ParseError("missing key 'travel_time'");
    if (!doc.contains("travel_cost")) throw ParseError("missing key 'travel_cost'");
    inst.travel_time = detail::matrix_from_json(doc["travel_time"], "travel_time");
    inst.travel_cost = detail::matrix_from_json(doc["travel_cost"], "travel_cost");
    return inst;
}

// ---------------------------------------------------------------------------
// Keyed text layouts (cirplib, roadef-adapted)

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank, non-comment line split into tokens; false at EOF.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            tokens.clear();
            std::istringstream ls(line);
            for (std::string t; ls >> t;) tokens.push_back(t);
            return true;
        }
        return false;
    }

    int line() const { return line_no_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
    }

    double number(const std::string& tok) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) fail("malformed number '" + tok + "'");
            return v;
        } catch (const std::logic_error&) {
            fail("malformed number '" + tok + "'");
        }
    }

    int integer(const std::string& tok) const {
        const double v = number(tok);
        if (v != std::floor(v)) fail("expected an integer, got '" + tok + "'");
        return static_cast<int>(v);
    }

private:
    std::istream& in_;
    int line_no_ = 0;
};

inline std::string upper(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

inline Instance parse_keyed(std::istream& in, InstanceFormat fmt, const std::string& default_name) {
    const bool cirplib = fmt == InstanceFormat::cirplib;
    LineReader rd(in);
    Instance inst;
    inst.name = default_name;
    bool have_h = false, have_k = false, have_q = false;
    int n = -1;
    std::optional<SquareMatrix> tt, tc;

    auto read_matrix = [&](const char* label) {
        if (n < 0) rd.fail(std::string(label) + " must come after CUSTOMERS");
        SquareMatrix m(static_cast<std::size_t>(n + 1));
        std::vector<std::string> row;
        for (int r = 0; r <= n; ++r) {
            if (!rd.next(row)) rd.fail(std::string("unexpected end of file inside ") + label);
            if (static_cast<int>(row.size()) != n + 1)
                rd.fail(std::string(label) + " row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(n + 1));
            for (int c = 0; c <= n; ++c)
                m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = rd.number(row[static_cast<std::size_t>(c)]);
        }
        return m;
    };

    std::vector<std::string> tok;
    while (rd.next(tok)) {
        const std::string key = upper(tok[0]);
        auto expect_args = [&](std::size_t k) {
            if (tok.size() != k + 1) rd.fail(key + " expects " + std::to_string(k) + " value(s)");
        };
        if (key == "NAME") {
            expect_args(1);
            inst.name = tok[1];
        } else if (key == "HORIZON") {
            expect_args(1);
            inst.horizon = rd.number(tok[1]);
            have_h = true;
        } else if (key == "VEHICLES") {
            expect_args(1);
            inst.fleet_size = rd.integer(tok[1]);
            have_k = true;
        } else if (key == "CAPACITY") {
            expect_args(1);
            inst.capacity = rd.number(tok[1]);
            have_q = true;
        } else if (key == "DEPOT") {
            if (!cirplib) rd.fail("DEPOT is not part of the roadef-adapted layout");
            expect_args(2);
            inst.depot_coords = std::make_pair(rd.number(tok[1]), rd.number(tok[2]));
        } else if (key == "CUSTOMERS") {
            expect_args(1);
            if (n >= 0) rd.fail("duplicate CUSTOMERS section");
            n = rd.integer(tok[1]);
            if (n < 1) rd.fail("CUSTOMERS count must be positive");
            const std::size_t width = cirplib ? 8 : 6;
            std::vector<std::string> row;
            for (int k = 1; k <= n; ++k) {
                if (!rd.next(row)) rd.fail("unexpected end of file inside CUSTOMERS");
                if (row.size() != width)
                    rd.fail("customer record has " + std::to_string(row.size()) + " fields, expected " +
                            std::to_string(width));
                Customer c;
                c.id = rd.integer(row[0]);
                if (c.id != k) rd.fail("customer ids must be 1..n in order, got " + row[0]);
                std::size_t f = 1;
                if (cirplib) {
                    c.coords = std::make_pair(rd.number(row[1]), rd.number(row[2]));
                    f = 3;
                }
                c.rate = rd.number(row[f]);
                c.inv_init = rd.number(row[f + 1]);
                c.inv_min = rd.number(row[f + 2]);
                c.inv_max = rd.number(row[f + 3]);
                c.inv_end_target = rd.number(row[f + 4]);
                inst.customers.push_back(c);
            }
        } else if (key == "TRAVEL_TIME") {
            expect_args(0);
            tt = read_matrix("TRAVEL_TIME");
        } else if (key == "TRAVEL_COST") {
            expect_args(0);
            tc = read_matrix("TRAVEL_COST");
        } else {
            rd.fail("unexpected keyword '" + tok[0] + "'");
        }
    }
    if (!have_h) throw ParseError("missing HORIZON");
    if (!have_k) throw ParseError("missing VEHICLES");
    if (!have_q) throw ParseError("missing CAPACITY");
    if (n < 0) throw ParseError("missing CUSTOMERS section");

    if (cirplib && (!tt || !tc)) {
        if (!inst.depot_coords) throw ParseError("cirplib layout requires DEPOT coordinates");
        SquareMatrix dist(static_cast<std::size_t>(n + 1));
        auto at = [&](int s) { return s == 0 ? *inst.depot_coords : *inst.customer(s).coords; };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = i == j ? 0.0 : rounded_distance(at(i), at(j));
        if (!tt) tt = dist;
        if (!tc) tc = dist;
    }
    if (!tt) throw ParseError("missing TRAVEL_TIME matrix");
    if (!tc) throw ParseError("missing TRAVEL_COST matrix");
    inst.travel_time = std::move(*tt);
    inst.travel_cost = std::move(*tc);
    return inst;
}

inline std::string format_number(double v) {
    // Shortest representation that round-trips.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace detail

// Writes the keyed text layout (used for fixtures and the convert command).
inline std::string to_keyed_text(const Instance& inst, InstanceFormat fmt) {
    using detail::format_number;
    const bool cirplib = fmt == InstanceFormat::cirplib;
    std::ostringstream os;
    os << "NAME " << (inst.name.empty() ? "unnamed" : inst.name) << "\n";
    os << "HORIZON " << format_number(inst.horizon) << "\n";
    os << "VEHICLES " << inst.fleet_size << "\n";
    os << "CAPACITY " << format_number(inst.capacity) << "\n";
    if (cirplib) {
        if (!inst.depot_coords) throw ParseError("cirplib layout needs depot coordinates");
        os << "DEPOT " << format_number(inst.depot_coords->first) << ' ' << format_number(inst.depot_coords->second)
           << "\n";
    }
    os << "CUSTOMERS " << inst.num_customers() << "\n";
    for (const Customer& c : inst.customers) {
        os << c.id;
        if (cirplib) {
            if (!c.coords) throw ParseError("cirplib layout needs customer coordinates");
            os << ' ' << format_number(c.coords->first) << ' ' << format_number(c.coords->second);
        }
        os << ' ' << format_number(c.rate) << ' ' << format_number(c.inv_init) << ' ' << format_number(c.inv_min) << ' '
           << format_number(c.inv_max) << ' ' << format_number(c.inv_end_target) << "\n";
    }
    auto dump = [&](const char* label, const SquareMatrix& m) {
        os << label << "\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << format_number(m(i, j));
            os << "\n";
        }
    };
    dump("TRAVEL_TIME", inst.travel_time);
    dump("TRAVEL_COST", inst.travel_cost);
    return os.str();
}

// Parses and validates. `name` is used when the file carries none.
inline Instance parse_instance(std::string_view text, InstanceFormat fmt, const std::string& name = {},
                               std::optional<ValidationOptions> vopts = std::nullopt) {
    Instance inst;
    if (fmt == InstanceFormat::canonical) {
        inst = parse_canonical(text);
        if (inst.name.empty()) inst.name = name;
    } else {
        std::istringstream in{std::string(text)};
        inst = detail::parse_keyed(in, fmt, name);
    }
    ValidationOptions v;
    // Rounded Euclidean distances may break the triangle inequality by up to
    // three half-cent rounding errors.
    if (fmt == InstanceFormat::cirplib) v.triangle_tolerance = 0.015 + 1e-9;
    validate_instance(inst, vopts.value_or(v));
    return inst;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Instance load_instance(const std::filesystem::path& path, InstanceFormat fmt,
                              std::optional<ValidationOptions> vopts = std::nullopt) {
    return parse_instance(read_text_file(path), fmt, path.stem().string(), vopts);
}

// Text files without a DEPOT line are read as roadef.
inline InstanceFormat sniff_instance_format(const std::filesystem::path& path, std::string_view text) {
    if (guess_instance_format(path) == InstanceFormat::canonical) return InstanceFormat::canonical;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        for (char& ch : key) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (key == "DEPOT") return InstanceFormat::cirplib;
    }
    return InstanceFormat::roadef_adapted;
}

inline Instance load_instance(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return parse_instance(text, sniff_instance_format(path, text), path.stem().string());
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

} // namespace cirp
