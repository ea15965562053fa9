#include "matpower.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gridplot {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }
    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '%') {
                while (!eof() && peek() != '\n') advance();
            } else if (c == '.' && pos + 2 < text.size() &&
                       text.compare(pos, 3, "...") == 0) {
                // MATLAB line continuation
                pos += 3;
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

[[noreturn]] void syntax_error(int line, const std::string& reason) {
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ": " + reason);
}

std::string read_identifier(Cursor& c) {
    std::string out;
    while (!c.eof() &&
           (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')) {
        out += c.peek();
        c.advance();
    }
    return out;
}

double read_number(Cursor& c) {
    size_t start = c.pos;
    if (!c.eof() && (c.peek() == '+' || c.peek() == '-')) c.advance();
    while (!c.eof() && (std::isdigit(static_cast<unsigned char>(c.peek())) ||
                        c.peek() == '.' || c.peek() == 'e' || c.peek() == 'E' ||
                        ((c.peek() == '+' || c.peek() == '-') &&
                         (c.text[c.pos - 1] == 'e' || c.text[c.pos - 1] == 'E'))))
        c.advance();
    if (c.pos == start) syntax_error(c.line, "expected a number");
    double value = 0.0;
    auto res = std::from_chars(c.text.data() + start, c.text.data() + c.pos, value);
    if (res.ec != std::errc() || res.ptr != c.text.data() + c.pos)
        syntax_error(c.line, "malformed number '" +
                                 c.text.substr(start, c.pos - start) + "'");
    if (!std::isfinite(value)) syntax_error(c.line, "non-finite number");
    return value;
}

std::string read_quoted(Cursor& c) {
    c.advance(); // opening quote
    std::string out;
    while (!c.eof() && c.peek() != '\'') {
        out += c.peek();
        c.advance();
    }
    if (c.eof()) syntax_error(c.line, "unterminated string");
    c.advance(); // closing quote
    return out;
}

std::vector<std::vector<double>> read_matrix(Cursor& c, const std::string& name) {
    c.advance(); // '['
    std::vector<std::vector<double>> rows;
    std::vector<double> row;
    auto flush_row = [&] {
        if (!row.empty()) {
            rows.push_back(std::move(row));
            row.clear();
        }
    };
    while (true) {
        // detect row separators before skipping whitespace
        while (!c.eof()) {
            char ch = c.peek();
            if (ch == '\n' || ch == ';') {
                flush_row();
                c.advance();
            } else if (ch == '%') {
                while (!c.eof() && c.peek() != '\n') c.advance();
            } else if (ch == '.' && c.pos + 2 < c.text.size() &&
                       c.text.compare(c.pos, 3, "...") == 0) {
                c.pos += 3;
                while (!c.eof() && c.peek() != '\n') c.advance();
                if (!c.eof()) c.advance(); // swallow the newline, row continues
            } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
                c.advance();
            } else {
                break;
            }
        }
        if (c.eof()) syntax_error(c.line, "unterminated matrix '" + name + "'");
        if (c.peek() == ']') {
            flush_row();
            c.advance();
            break;
        }
        row.push_back(read_number(c));
    }
    if (!rows.empty()) {
        size_t width = rows.front().size();
        for (const auto& r : rows)
            if (r.size() != width)
                throw Error(ErrorCode::RaggedMatrix,
                            "ragged matrix '" + name + "'");
    }
    return rows;
}

std::vector<std::string> read_cell_strings(Cursor& c, const std::string& name) {
    c.advance(); // '{'
    std::vector<std::string> out;
    while (true) {
        c.skip_ws_and_comments();
        if (c.eof()) syntax_error(c.line, "unterminated cell array '" + name + "'");
        char ch = c.peek();
        if (ch == '}') {
            c.advance();
            break;
        }
        if (ch == '\'') {
            out.push_back(read_quoted(c));
        } else if (ch == ';' || ch == ',') {
            c.advance();
        } else {
            syntax_error(c.line, "expected string in cell array '" + name + "'");
        }
    }
    return out;
}

} // namespace

RawMatpowerCase parse_matpower(const std::string& text) {
    RawMatpowerCase raw;
    Cursor c{text};
    bool saw_function = false;

    while (true) {
        c.skip_ws_and_comments();
        if (c.eof()) break;
        int stmt_line = c.line;
        std::string ident = read_identifier(c);
        if (ident.empty()) syntax_error(c.line, "unexpected character");

        if (ident == "function") {
            c.skip_ws_and_comments();
            read_identifier(c); // return variable (mpc)
            c.skip_ws_and_comments();
            if (!c.eof() && c.peek() == '=') {
                c.advance();
                c.skip_ws_and_comments();
                raw.name = read_identifier(c);
            }
            saw_function = true;
            continue;
        }
        if (ident == "end") continue;
        if (ident != "mpc")
            syntax_error(stmt_line, "unsupported statement '" + ident + "'");

        if (c.eof() || c.peek() != '.')
            syntax_error(c.line, "expected '.' after 'mpc'");
        c.advance();
        std::string field = read_identifier(c);
        if (field.empty()) syntax_error(c.line, "missing field name");
        c.skip_ws_and_comments();
        if (c.eof() || c.peek() != '=')
            syntax_error(c.line, "expected '=' in assignment to mpc." + field);
        c.advance();
        c.skip_ws_and_comments();
        if (c.eof()) syntax_error(c.line, "missing value for mpc." + field);

        char ch = c.peek();
        if (ch == '[') {
            raw.matrices[field] = read_matrix(c, field);
        } else if (ch == '{') {
            raw.string_tables[field] = read_cell_strings(c, field);
        } else if (ch == '\'') {
            std::string s = read_quoted(c);
            if (field == "version") raw.version = s;
        } else {
            double v = read_number(c);
            if (field == "baseMVA") raw.base_mva = v;
            else raw.matrices[field] = {{v}};
        }
        c.skip_ws_and_comments();
        if (!c.eof() && c.peek() == ';') c.advance();
    }

    if (!saw_function)
        throw Error(ErrorCode::SyntaxError, "missing 'function mpc = ...' header");
    for (const char* required : {"bus", "gen", "branch"})
        if (!raw.matrices.count(required))
            throw Error(ErrorCode::SyntaxError,
                        std::string("missing required matrix '") + required + "'");
    if (raw.base_mva <= 0.0)
        throw Error(ErrorCode::SyntaxError, "baseMVA must be positive");
    return raw;
}

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

json num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15)
        return static_cast<long long>(v);
    return v;
}

const char* kBusCols[] = {"bus_i", "bus_type", "pd",   "qd",   "gs",
                          "bs",    "area",     "vm",   "va",   "base_kv",
                          "zone",  "vmax",     "vmin"};
const char* kGenCols[] = {"gen_bus", "pg",    "qg",        "qmax",
                          "qmin",    "vg",    "mbase",     "gen_status",
                          "pmax",    "pmin",  "pc1",       "pc2",
                          "qc1min",  "qc1max","qc2min",    "qc2max",
                          "ramp_agc","ramp_10","ramp_30",  "ramp_q",
                          "apf"};
const char* kBranchCols[] = {"f_bus",  "t_bus",  "br_r",   "br_x",
                             "br_b",   "rate_a", "rate_b", "rate_c",
                             "tap",    "shift",  "br_status",
                             "angmin", "angmax", "pf",     "qf",
                             "pt",     "qt"};

bool is_mva_col(const std::string& name) {
    static const char* cols[] = {"pd",   "qd",     "gs",     "bs",   "pg",
                                 "qg",   "qmax",   "qmin",   "pmax", "pmin",
                                 "rate_a", "rate_b", "rate_c", "pf", "qf",
                                 "pt",   "qt",     "ramp_agc", "ramp_10",
                                 "ramp_30", "ramp_q"};
    for (const char* c : cols)
        if (name == c) return true;
    return false;
}

bool is_angle_col(const std::string& name) {
    return name == "va" || name == "shift" || name == "angmin" ||
           name == "angmax";
}

bool is_integer_col(const std::string& name) {
    static const char* cols[] = {"bus_i",  "bus_type",  "area",   "zone",
                                 "gen_bus", "gen_status", "f_bus", "t_bus",
                                 "br_status"};
    for (const char* c : cols)
        if (name == c) return true;
    return false;
}

json field_value(const std::string& name, double v, double base_mva) {
    if (is_mva_col(name)) return v / base_mva;
    if (is_angle_col(name)) return v * kDegToRad;
    if (is_integer_col(name)) return static_cast<long long>(v);
    return num(v);
}

} // namespace

Network to_network(const RawMatpowerCase& raw) {
    Network net;
    net.metadata["name"] = raw.name;
    net.metadata["base_mva"] = raw.base_mva;
    net.metadata["per_unit"] = true;
    net.metadata["source_type"] = "matpower";
    if (!raw.version.empty()) net.metadata["source_version"] = raw.version;

    const double base = raw.base_mva;
    const auto& bus_m = raw.matrices.at("bus");
    const auto& gen_m = raw.matrices.at("gen");
    const auto& branch_m = raw.matrices.at("branch");

    auto& buses = net.components["bus"];
    long long load_id = 0, shunt_id = 0;
    for (const auto& row : bus_m) {
        json rec = json::object();
        size_t ncols = std::min(row.size(), std::size(kBusCols));
        for (size_t i = 0; i < ncols; ++i) {
            const std::string col = kBusCols[i];
            if (col == "pd" || col == "qd" || col == "gs" || col == "bs")
                continue; // split out below
            rec[col] = field_value(col, row[i], base);
        }
        long long id = static_cast<long long>(row[0]);
        rec["index"] = id;
        buses[std::to_string(id)] = std::move(rec);

        double pd = row.size() > 2 ? row[2] : 0.0;
        double qd = row.size() > 3 ? row[3] : 0.0;
        if (pd != 0.0 || qd != 0.0) {
            ++load_id;
            json load = {{"index", load_id},
                         {"load_bus", id},
                         {"pd", pd / base},
                         {"qd", qd / base},
                         {"status", 1}};
            net.components["load"][std::to_string(load_id)] = std::move(load);
        }
        double gs = row.size() > 4 ? row[4] : 0.0;
        double bs = row.size() > 5 ? row[5] : 0.0;
        if (gs != 0.0 || bs != 0.0) {
            ++shunt_id;
            json shunt = {{"index", shunt_id},
                          {"shunt_bus", id},
                          {"gs", gs / base},
                          {"bs", bs / base},
                          {"status", 1}};
            net.components["shunt"][std::to_string(shunt_id)] = std::move(shunt);
        }
    }

    const std::vector<std::vector<double>>* gencost = nullptr;
    if (auto it = raw.matrices.find("gencost");
        it != raw.matrices.end() && it->second.size() == gen_m.size())
        gencost = &it->second;

    if (!gen_m.empty()) {
        auto& gens = net.components["gen"];
        long long id = 0;
        for (const auto& row : gen_m) {
            ++id;
            json rec = json::object();
            size_t ncols = std::min(row.size(), std::size(kGenCols));
            for (size_t i = 0; i < ncols; ++i)
                rec[kGenCols[i]] = field_value(kGenCols[i], row[i], base);
            rec["index"] = id;
            long long bus = static_cast<long long>(row[0]);
            if (!net.has_bus(bus))
                throw Error(ErrorCode::DanglingBusRef,
                            "gen " + std::to_string(id) + " references missing bus " +
                                std::to_string(bus));
            if (gencost) {
                const auto& cr = (*gencost)[id - 1];
                if (cr.size() >= 4) {
                    rec["model"] = static_cast<long long>(cr[0]);
                    rec["startup"] = num(cr[1]);
                    rec["shutdown"] = num(cr[2]);
                    rec["ncost"] = static_cast<long long>(cr[3]);
                    json cost = json::array();
                    for (size_t i = 4; i < cr.size(); ++i) cost.push_back(num(cr[i]));
                    rec["cost"] = std::move(cost);
                }
            }
            gens[std::to_string(id)] = std::move(rec);
        }
    }

    if (!branch_m.empty()) {
        auto& branches = net.components["branch"];
        long long id = 0;
        for (const auto& row : branch_m) {
            ++id;
            json rec = json::object();
            size_t ncols = std::min(row.size(), std::size(kBranchCols));
            for (size_t i = 0; i < ncols; ++i)
                rec[kBranchCols[i]] = field_value(kBranchCols[i], row[i], base);
            rec["index"] = id;
            for (size_t i : {size_t{0}, size_t{1}}) {
                long long bus = static_cast<long long>(row[i]);
                if (!net.has_bus(bus))
                    throw Error(ErrorCode::DanglingBusRef,
                                "branch " + std::to_string(id) +
                                    " references missing bus " + std::to_string(bus));
            }
            branches[std::to_string(id)] = std::move(rec);
        }
    }

    // preserve matrices we do not interpret
    json extra = json::object();
    for (const auto& [name, matrix] : raw.matrices) {
        if (name == "bus" || name == "gen" || name == "branch") continue;
        if (name == "gencost" && gencost) continue;
        extra[name] = matrix;
    }
    for (const auto& [name, strings] : raw.string_tables) extra[name] = strings;
    if (!extra.empty()) net.metadata["matpower_extra"] = std::move(extra);

    return net;
}

} // namespace gridplot
