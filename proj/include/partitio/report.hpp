#pragma once

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "constants.hpp"
#include "counting.hpp"
#include "detail/decimal.hpp"
#include "errors.hpp"
#include "expsums.hpp"
#include "exponents.hpp"
#include "moments.hpp"
#include "singular.hpp"
#include "weights.hpp"

namespace partitio {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Column {
    std::string name;
    int digits = -1;  // negative: shortest round-trip form
    Rounding rounding = Rounding::nearest;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<Table> tables;
    std::vector<Check> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

enum class OutputFormat { csv, json, pretty };

inline const char* to_string(Rounding r) {
    switch (r) {
        case Rounding::up: return "up";
        case Rounding::down: return "down";
        case Rounding::nearest: return "nearest";
    }
    return "?";
}

inline std::string shortest(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

inline std::string format_cell(const Cell& cell, const Column& col) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return col.digits >= 0 ? fixed_digits(v, col.digits, col.rounding) : shortest(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        cell);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void emit_csv(const Report& r, std::ostream& os) {
    for (const auto& t : r.tables) {
        os << "# " << t.name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i].name);
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(format_cell(row[i], t.columns[i]));
            os << '\n';
        }
    }
    if (!r.checks.empty()) {
        os << "# checks\nname,pass,detail\n";
        for (const auto& c : r.checks) os << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_field(c.detail) << '\n';
    }
}

inline nlohmann::json cell_json(const Cell& cell, const Column& col) {
    return std::visit(
        [&](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_cell(cell, col);
                return std::stod(format_cell(cell, col));
            } else {
                return v;
            }
        },
        cell);
}

inline nlohmann::json report_json(const Report& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["ok"] = r.ok();
    j["tables"] = nlohmann::json::array();
    for (const auto& t : r.tables) {
        nlohmann::json jt;
        jt["name"] = t.name;
        jt["columns"] = nlohmann::json::array();
        for (const auto& c : t.columns) {
            nlohmann::json jc{{"name", c.name}};
            if (c.digits >= 0) {
                jc["digits"] = c.digits;
                jc["rounding"] = to_string(c.rounding);
            }
            jt["columns"].push_back(jc);
        }
        jt["rows"] = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json jr = nlohmann::json::array();
            for (std::size_t i = 0; i < row.size(); ++i) jr.push_back(cell_json(row[i], t.columns[i]));
            jt["rows"].push_back(jr);
        }
        j["tables"].push_back(jt);
    }
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

inline void emit_pretty(const Report& r, std::ostream& os) {
    bool first = true;
    for (const auto& t : r.tables) {
        if (!first) os << '\n';
        first = false;
        os << t.name << '\n';
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> width(t.columns.size(), 0);
        for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].name.size();
        for (const auto& row : t.rows) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                line.push_back(format_cell(row[i], t.columns[i]));
                width[i] = std::max(width[i], line.back().size());
            }
            text.push_back(std::move(line));
        }
        auto put = [&](const std::vector<std::string>& cells) {
            std::string line;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) line += "  ";
                line += std::string(width[i] - cells[i].size(), ' ') + cells[i];
            }
            os << line << '\n';
        };
        std::vector<std::string> header;
        for (const auto& c : t.columns) header.push_back(c.name);
        put(header);
        std::vector<std::string> rule;
        for (auto w : width) rule.push_back(std::string(w, '-'));
        put(rule);
        for (const auto& line : text) put(line);
    }
    if (!r.checks.empty()) {
        if (!first) os << '\n';
        for (const auto& c : r.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    }
}

}  // namespace detail

inline void emit(const Report& r, OutputFormat format, std::ostream& os) {
    switch (format) {
        case OutputFormat::csv: detail::emit_csv(r, os); break;
        case OutputFormat::json: os << detail::report_json(r).dump(2) << '\n'; break;
        case OutputFormat::pretty: detail::emit_pretty(r, os); break;
    }
}

inline std::string emit_string(const Report& r, OutputFormat format) {
    std::ostringstream os;
    emit(r, format, os);
    return os.str();
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "pretty") return OutputFormat::pretty;
    throw config_error("unknown format '" + s + "' (csv, json, pretty)");
}

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    OutputFormat format = OutputFormat::pretty;
    std::uint64_t seed = 20240601;
    unsigned workers = 1;
};

// Keys accepted by each command, with their defaults ("" means optional, no default).
inline const std::map<std::string, std::map<std::string, std::string>>& command_keys() {
    static const std::map<std::string, std::map<std::string, std::string>> keys{
        {"constants", {{"k_max", "12"}}},
        {"thm14-table", {}},
        {"counts", {{"k", "4"}, {"s", "6"}, {"limit", "200"}, {"zero_set", "false"}}},
        {"moments", {{"k", "3"}, {"r", "2"}, {"P", "10"}, {"R", ""}, {"eta", ""}, {"grid", "2000"}, {"tolerance", "0.001"}, {"n", ""}}},
        {"weights",
         {{"kind", "squares"}, {"limit", "1000000"}, {"k", "3"}, {"h", "2"}, {"Q", ""}, {"samples", "200"}, {"phi", ""}, {"tolerance", "0.1"}}},
        {"singular", {{"k", "3"}, {"s", "5"}, {"m", "5"}, {"Q", "1000"}}},
        {"check", {{"k", "7"}, {"s", "20"}, {"phi", "0.125"}, {"r", "4"}, {"t", "6"}, {"source", "automatic"}, {"h", ""}}},
    };
    return keys;
}

namespace detail {

class Params {
  public:
    Params(const RunConfig& cfg) : cfg_(cfg) {
        const auto it = command_keys().find(cfg.command);
        if (it == command_keys().end()) throw config_error("unknown command '" + cfg.command + "'");
        allowed_ = &it->second;
        for (const auto& [key, value] : cfg.params)
            if (!allowed_->count(key)) throw config_error("unknown key '" + key + "' for command " + cfg.command);
    }

    bool has(const std::string& key) const { return !raw(key).empty(); }

    std::string str(const std::string& key) const {
        const auto v = raw(key);
        if (v.empty()) throw config_error("missing value for '" + key + "'");
        return v;
    }

    std::int64_t integer(const std::string& key) const {
        const auto v = str(key);
        std::int64_t out = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
            // allow forms like 1e6
            const double d = real(key);
            if (d != std::floor(d) || std::fabs(d) > 9e18) throw config_error("'" + key + "' must be an integer, got '" + v + "'");
            return static_cast<std::int64_t>(d);
        }
        return out;
    }

    double real(const std::string& key) const {
        const auto v = str(key);
        const auto slash = v.find('/');
        if (slash != std::string::npos) return parse_real(v.substr(0, slash), key) / parse_real(v.substr(slash + 1), key);
        return parse_real(v, key);
    }

    bool boolean(const std::string& key) const {
        const auto v = str(key);
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw config_error("'" + key + "' must be a boolean, got '" + v + "'");
    }

  private:
    std::string raw(const std::string& key) const {
        if (!allowed_->count(key)) throw std::logic_error("key not declared: " + key);
        if (auto it = cfg_.params.find(key); it != cfg_.params.end()) return it->second;
        return allowed_->at(key);
    }

    static double parse_real(const std::string& v, const std::string& key) {
        std::size_t pos = 0;
        double d = 0.0;
        try {
            d = std::stod(v, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != v.size() || v.empty()) throw config_error("'" + key + "' must be a number, got '" + v + "'");
        return d;
    }

    const RunConfig& cfg_;
    const std::map<std::string, std::string>* allowed_ = nullptr;
};

inline std::string fmt(double x, int digits = 6) { return fixed_digits(x, digits, Rounding::nearest); }

inline Report constants_command(const Params& p) {
    Report r{"constants", {}, {}};
    Table pruning{"pruning",
                  {{"phi"},
                   {"rhs", pruning_rhs_digits, Rounding::up},
                   {"z_star", pruning_z_digits, Rounding::up},
                   {"c2_star", pruning_c2_digits, Rounding::up},
                   {"c1", pruning_c1_digits, Rounding::up}},
                  {}};
    const auto rows = pruning_table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& printed = printed_pruning_table[i];
        pruning.rows.push_back({row.phi, row.rhs, row.z_star, row.c2_star, row.c1});
        const bool match = fixed_digits(row.rhs, pruning_rhs_digits, Rounding::up) == printed.rhs &&
                           fixed_digits(row.z_star, pruning_z_digits, Rounding::up) == printed.z_star &&
                           fixed_digits(row.c2_star, pruning_c2_digits, Rounding::up) == printed.c2_star &&
                           fixed_digits(row.c1, pruning_c1_digits, Rounding::up) == printed.c1;
        r.checks.push_back({std::string("pruning row phi=") + printed.label, match, ""});
    }
    r.tables.push_back(std::move(pruning));

    const ConstantsReport c = constants_report();
    Table consts{"constants", {{"name"}, {"value", 10, Rounding::nearest}}, {}};
    for (const auto& [name, v] : std::vector<std::pair<std::string, double>>{{"zeta_star", c.zeta_star},
                                                                            {"phi_star", c.phi_star},
                                                                            {"sigma_star", c.sigma_star},
                                                                            {"c", c.c},
                                                                            {"theta", c.theta},
                                                                            {"c_tilde", c.c_tilde},
                                                                            {"c0", c.c0},
                                                                            {"D", c.D}})
        consts.rows.push_back({name, v});
    r.tables.push_back(std::move(consts));
    const double c2_eighth = c2_star(0.125).c2;
    r.checks.push_back({"c2*(1/8) = c_tilde", std::fabs(c2_eighth - c.c_tilde) < 1e-10, "diff " + shortest(c2_eighth - c.c_tilde)});

    const auto k_max = p.integer("k_max");
    if (k_max < 3) throw config_error("k_max must be at least 3");
    Table kp{"k_params",
             {{"k"}, {"r"}, {"zeta_k"}, {"phi_k", 8}, {"sigma_k", 8}, {"E", 10}},
             {}};
    for (int k = 3; k <= k_max; ++k) {
        const KParams kk = k_params(k);
        const EResult e = e_closed(kk.sigma_k, kk.phi_k, kk.zeta_k);
        kp.rows.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(kk.r),
                           std::to_string(kk.zeta.numerator()) + "/" + std::to_string(kk.zeta.denominator()), kk.phi_k, kk.sigma_k, e.E});
    }
    r.tables.push_back(std::move(kp));
    return r;
}

inline Report thm14_command(const Params&) {
    Report r{"thm14-table", {}, {}};
    Table t{"thm14",
            {{"k"}, {"r"}, {"delta_2r"}, {"s"}, {"t"}, {"delta_s_plus_t"}, {"delta_star_printed"}, {"delta_star"}, {"pass"}},
            {}};
    for (const auto& c : verify_thm14_table()) {
        t.rows.push_back({static_cast<std::int64_t>(c.row.k), static_cast<std::int64_t>(c.row.r), std::string(c.row.delta_2r),
                          static_cast<std::int64_t>(c.row.s), static_cast<std::int64_t>(c.row.t), std::string(c.row.delta_s_plus_t),
                          std::string(c.row.delta_star), c.delta_star_rounded, c.pass()});
        r.checks.push_back({"thm14 row k=" + std::to_string(c.row.k), c.pass(),
                            "delta*=" + c.delta_star_rounded + (c.delta_below_star ? "" : " delta_{s+t} too large") +
                                (c.r_condition ? "" : " r condition fails")});
    }
    r.tables.push_back(std::move(t));
    return r;
}

inline Report counts_command(const Params& p) {
    Report r{"counts", {}, {}};
    const int k = static_cast<int>(p.integer("k"));
    const int s = static_cast<int>(p.integer("s"));
    const std::int64_t limit = p.integer("limit");
    if (k < 1 || s < 1 || limit < 1) throw config_error("counts needs k, s, limit >= 1");
    if (p.boolean("zero_set")) {
        Table t{"zero_set", {{"n"}}, {}};
        for (auto n : zero_set(k, s, limit)) t.rows.push_back({n});
        r.tables.push_back(std::move(t));
    } else {
        const CountTable c = representation_counts(k, s, limit);
        Table t{"counts", {{"n"}, {"count"}}, {}};
        for (std::int64_t n = 0; n <= limit; ++n) t.rows.push_back({n, to_string_u128(c.wide_at(n))});
        r.tables.push_back(std::move(t));
    }
    return r;
}

inline Report moments_command(const Params& p, const RunConfig& cfg) {
    Report r{"moments", {}, {}};
    const int k = static_cast<int>(p.integer("k"));
    const int rr = static_cast<int>(p.integer("r"));
    const std::int64_t P = p.integer("P");
    if (k < 3 || rr < 1 || P < 2) throw config_error("moments needs k >= 3, r >= 1, P >= 2");
    std::int64_t R = P;
    if (p.has("R")) R = p.integer("R");
    else if (p.has("eta")) R = smooth_bound_from_eta(P, p.real("eta"));
    if (R < 2 || R > P) throw config_error("R must lie in [2, P]");
    const auto top = detail::ipow_checked(P, k);
    if (!top) throw config_error("P^k exceeds 64 bits");

    const std::uint64_t exact = moment_exact(k, rr, P, R);
    WeightParams wp;
    wp.k = k;
    wp.P = P;
    wp.R = R;
    const Weight w = make_weight(WeightKind::smooth_kth_powers, *top, wp);
    QuadratureConfig qc;
    qc.region = Region::full;
    qc.grid_points = p.integer("grid");
    qc.workers = cfg.workers;
    const QuadratureResult q = quadrature_moment(w, 2 * rr, qc);
    const double rel = std::fabs(q.value - static_cast<double>(exact)) / static_cast<double>(exact);

    Table t{"moments", {{"quantity"}, {"value"}}, {}};
    t.rows.push_back({std::string("P"), P});
    t.rows.push_back({std::string("R"), R});
    t.rows.push_back({std::string("moment_exact"), static_cast<std::int64_t>(exact)});
    t.rows.push_back({std::string("quadrature"), fmt(q.value, 6)});
    t.rows.push_back({std::string("quadrature_coarse"), fmt(q.coarse, 6)});
    t.rows.push_back({std::string("grid_points"), q.grid_points});
    t.rows.push_back({std::string("relative_error"), shortest(rel)});
    if (p.has("n")) {
        const std::int64_t n = p.integer("n");
        t.rows.push_back({std::string("mean_value_N"), static_cast<std::int64_t>(mean_value_N(k, rr, n, R))});
    }
    r.tables.push_back(std::move(t));
    const double tol = p.real("tolerance");
    r.checks.push_back({"quadrature matches moment_exact", rel <= tol && q.converged, "relative error " + shortest(rel)});
    return r;
}

inline Report weights_command(const Params& p, const RunConfig& cfg) {
    Report r{"weights", {}, {}};
    const std::string kind = p.str("kind");
    const std::int64_t n = p.integer("limit");
    if (n < 16) throw config_error("weights needs limit >= 16");
    WeightParams wp;
    wp.k = static_cast<int>(p.integer("k"));
    wp.h = static_cast<int>(p.integer("h"));
    std::optional<Weight> w;
    for (auto wk : {WeightKind::squares, WeightKind::prime_squares, WeightKind::primes_log, WeightKind::mobius, WeightKind::hth_powers,
                    WeightKind::smooth_kth_powers, WeightKind::e2})
        if (kind == to_string(wk)) w = make_weight(wk, n, wp);
    if (!w) throw config_error("unknown weight kind '" + kind + "'");
    std::vector<double> Qs;
    if (p.has("Q")) {
        std::stringstream ss(p.str("Q"));
        for (std::string item; std::getline(ss, item, ';');) Qs.push_back(std::stod(item));
    } else {
        for (double Q = 4.0; Q <= 2.0 * std::sqrt(static_cast<double>(n)); Q *= 2.0) Qs.push_back(Q);
    }
    const auto samples = static_cast<std::size_t>(p.integer("samples"));
    SamplingConfig sc;
    sc.seed = cfg.seed;
    sc.workers = cfg.workers;
    const auto profile = sup_profile(*w, Qs, samples, sc);
    Table t{"profile", {{"Q"}, {"samples"}, {"sup", 6}, {"sup_over_norm", 8}}, {}};
    for (const auto& pt : profile)
        t.rows.push_back({pt.Q, static_cast<std::int64_t>(pt.samples), pt.sup, w->norm() > 0 ? pt.sup / w->norm() : 0.0});
    r.tables.push_back(std::move(t));
    const DecayFit fit = fit_decay(profile, w->norm());
    Table f{"fit", {{"weight"}, {"norm", 6}, {"phi_hat", 6}, {"c_hat", 6}, {"residual", 6}}, {}};
    f.rows.push_back({w->name(), w->norm(), fit.phi_hat, fit.c_hat, fit.residual});
    r.tables.push_back(std::move(f));
    if (p.has("phi")) {
        const double target = p.real("phi");
        const double tol = p.real("tolerance");
        r.checks.push_back({"fitted decay near phi", std::fabs(fit.phi_hat - target) <= tol, "phi_hat " + fmt(fit.phi_hat)});
    }
    return r;
}

inline Report singular_command(const Params& p, const RunConfig& cfg) {
    Report r{"singular", {}, {}};
    const int k = static_cast<int>(p.integer("k"));
    const int s = static_cast<int>(p.integer("s"));
    const std::int64_t m = p.integer("m");
    const std::int64_t Q = p.integer("Q");
    if (k < 1 || s < 1 || Q < 1) throw config_error("singular needs k, s, Q >= 1");
    const auto terms = singular_terms({m}, s, k, Q, cfg.workers)[0];
    Table t{"series", {{"Q_cut"}, {"partial", 12}, {"last_block", 12}}, {}};
    std::vector<std::int64_t> cuts;
    for (std::int64_t c = 1; c < Q; c *= 2) cuts.push_back(c);
    cuts.push_back(Q);
    SingularSeriesResult last;
    for (auto c : cuts) {
        last = series_from_terms(terms, m, s, k, c);
        t.rows.push_back({c, last.partial, last.last_block});
    }
    r.tables.push_back(std::move(t));
    if (s >= 4) r.checks.push_back({"singular series nonnegative", last.partial >= -1e-6, "partial " + fmt(last.partial, 9)});

    if (s <= 6 && m <= 10000) {
        const SingularIntegral si = singular_integral(m, s, k);
        Table ti{"integral", {{"m"}, {"exact", 8}, {"asymptotic", 8}, {"ratio", 6}}, {}};
        ti.rows.push_back({m, si.exact, si.asymptotic, si.asymptotic > 0 ? si.exact / si.asymptotic : 0.0});
        r.tables.push_back(std::move(ti));
    }

    const LocalSolubility ls = local_solubility(k, s, m);
    std::string rset;
    for (auto j : ls.R_set) rset += (rset.empty() ? "" : " ") + std::to_string(j);
    Table tl{"local", {{"modulus"}, {"R_set"}, {"hits_R"}, {"x0"}, {"j"}}, {}};
    tl.rows.push_back({ls.modulus, rset, ls.n_minus_square_hits_R, ls.witness ? ls.witness->x0 : std::int64_t{0},
                       static_cast<std::int64_t>(ls.witness ? ls.witness->j : 0)});
    r.tables.push_back(std::move(tl));
    return r;
}

inline DeltaSource parse_source(const std::string& s) {
    if (s == "large_k") return DeltaSource::large_k;
    if (s == "table") return DeltaSource::table;
    if (s == "interpolate") return DeltaSource::interpolate;
    if (s == "automatic") return DeltaSource::automatic;
    throw config_error("unknown exponent source '" + s + "'");
}

inline Report check_command(const Params& p) {
    Report r{"check", {}, {}};
    const int k = static_cast<int>(p.integer("k"));
    const int s = static_cast<int>(p.integer("s"));
    const double phi = p.real("phi");
    const int rr = static_cast<int>(p.integer("r"));
    const int t = static_cast<int>(p.integer("t"));
    const ConditionReport c = condition_check(k, s, phi, rr, t, parse_source(p.str("source")));
    auto opt = [](const std::optional<bool>& b) -> Cell { return b ? Cell{*b} : Cell{std::string("n/a")}; };
    auto optd = [](const std::optional<double>& d) -> Cell { return d ? Cell{*d} : Cell{std::string("n/a")}; };
    Table tc{"conditions", {{"condition"}, {"value"}}, {}};
    tc.rows.push_back({std::string("s >= 3k/2"), c.s_at_least_three_halves_k});
    tc.rows.push_back({std::string("s above minor-arc threshold"), c.exceeds_minor_threshold});
    tc.rows.push_back({std::string("height pruning 2 Delta_s < k phi"), opt(c.height_pruning)});
    tc.rows.push_back({std::string("Mobius condition"), opt(c.mobius_condition)});
    tc.rows.push_back({std::string("2 Delta_2r <= k"), opt(c.r_condition)});
    tc.rows.push_back({std::string("size pruning"), c.size_pruning});
    tc.rows.push_back({std::string("all conditions hold"), c.all_pass()});
    r.tables.push_back(std::move(tc));
    Table td{"exponents", {{"name"}, {"value", 6}}, {}};
    td.rows.push_back({std::string("Delta_s"), optd(c.delta_s)});
    td.rows.push_back({std::string("Delta_2r"), optd(c.delta_2r)});
    td.rows.push_back({std::string("Delta_s_plus_t"), c.delta_s_plus_t});
    td.rows.push_back({std::string("Delta_star"), c.delta_star});
    r.tables.push_back(std::move(td));

    std::optional<int> h;
    if (p.has("h")) h = static_cast<int>(p.integer("h"));
    const BoundCatalog b = bound_catalog(k, h);
    auto opti = [](const std::optional<int>& v) -> Cell { return v ? Cell{static_cast<std::int64_t>(*v)} : Cell{std::string("n/a")}; };
    Table tb{"bounds", {{"name"}, {"value", 6}}, {}};
    tb.rows.push_back({std::string("G(k) <="), b.G_bound});
    tb.rows.push_back({std::string("P(k) <="), b.P_bound});
    tb.rows.push_back({std::string("s0(k) <="), b.s0_bound});
    tb.rows.push_back({std::string("t0 formula"), b.t0_formula});
    tb.rows.push_back({std::string("c~ k + 3"), b.thm14_linear_bound});
    tb.rows.push_back({std::string("h-power threshold"), optd(b.h_power_threshold)});
    tb.rows.push_back({std::string("s0 small k"), opti(b.s0_small_k)});
    tb.rows.push_back({std::string("t0 table"), opti(b.t0_table)});
    tb.rows.push_back({std::string("s0~ table"), opti(b.s0_tilde_table)});
    tb.rows.push_back({std::string("S0 table"), opti(b.S0_table)});
    r.tables.push_back(std::move(tb));
    return r;
}

}  // namespace detail

inline Report build_report(const RunConfig& cfg) {
    const detail::Params p(cfg);
    if (cfg.command == "constants") return detail::constants_command(p);
    if (cfg.command == "thm14-table") return detail::thm14_command(p);
    if (cfg.command == "counts") return detail::counts_command(p);
    if (cfg.command == "moments") return detail::moments_command(p, cfg);
    if (cfg.command == "weights") return detail::weights_command(p, cfg);
    if (cfg.command == "singular") return detail::singular_command(p, cfg);
    return detail::check_command(p);
}

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

// Builds and emits the report; configuration and domain errors map to exit 2.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Report report;
    try {
        report = build_report(cfg);
    } catch (const config_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_verification_failed;
    }
    emit(report, cfg.format, out);
    return report.ok() ? exit_ok : exit_verification_failed;
}

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// key = value lines, '#' starts a comment; errors carry the line number.
inline std::vector<ConfigEntry> parse_config_text(std::istream& in) {
    auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    std::vector<ConfigEntry> out;
    std::set<std::string> seen;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error("expected key = value", no);
        ConfigEntry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), no};
        if (e.key.empty()) throw config_error("empty key", no);
        if (e.value.empty()) throw config_error("empty value for '" + e.key + "'", no);
        if (!seen.insert(e.key).second) throw config_error("duplicate key '" + e.key + "'", no);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace partitio
