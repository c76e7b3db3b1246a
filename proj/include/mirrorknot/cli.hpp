#pragma once

// Command-line front end. run() parses argv, dispatches to one operation and
// writes JSON (or plain text with --text).
//
// Exit status: 0 on success, 2 on usage and parse errors, 3 on domain errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mirrorknot/algebra.hpp>
#include <mirrorknot/codes.hpp>
#include <mirrorknot/enumerate.hpp>
#include <mirrorknot/invariants.hpp>
#include <mirrorknot/mosaic.hpp>
#include <mirrorknot/moves.hpp>
#include <mirrorknot/svg.hpp>

namespace mirrorknot::cli {

using json = nlohmann::ordered_json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;

inline bool is_usage_error(errc e) noexcept
{
    return e == errc::shape_error || e == errc::label_error || e == errc::ambiguous_shape || e == errc::usage_error;
}

inline unsigned default_jobs()
{
    if (const char *env = std::getenv("MIRRORKNOT_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
        fail(errc::usage_error, std::string("MIRRORKNOT_JOBS must be a positive integer, got ") + env);
    }
    return 1;
}

// Plain-text rendering of a JSON result.
inline std::string as_text(const json &j)
{
    if (j.is_string()) {
        return j.get<std::string>() + "\n";
    }
    if (j.is_array()) {
        std::string out;
        for (const auto &e : j) {
            out += e.is_string() ? e.get<std::string>() : e.dump();
            out += "\n";
        }
        return out;
    }
    if (j.is_object()) {
        std::string out;
        for (const auto &[k, v] : j.items()) {
            out += k + ": ";
            if (v.is_string()) {
                out += v.get<std::string>();
            } else if (v.is_array() && !v.empty() && v.front().is_string()) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    out += (i ? "; " : "") + v[i].get<std::string>();
                }
            } else {
                out += v.dump();
            }
            out += "\n";
        }
        return out;
    }
    return j.dump() + "\n";
}

inline json terms_json(const laurent_poly2 &x)
{
    json terms = json::array();
    for (const auto &[e, c] : x.terms()) {
        terms.push_back({{"a", e.a}, {"z", e.z}, {"c", c}});
    }
    return terms;
}

inline json four_json(const four_code &f) { return {{"p", f.p}, {"q", f.q}, {"m", f.m}, {"n", f.n}}; }

inline json six_json(const six_code &s)
{
    return {{"p", s.p}, {"q", s.q}, {"m1", s.m1}, {"n1", s.n1}, {"m2", s.m2}, {"n2", s.n2}};
}

inline family family_from_name(const std::string &s)
{
    if (s == "P" || s == "p") {
        return family::p;
    }
    if (s == "P2" || s == "p2") {
        return family::p2;
    }
    if (s == "3P" || s == "3p") {
        return family::three_p;
    }
    if (s == "PQ" || s == "pq") {
        return family::pq;
    }
    fail(errc::usage_error, "unknown family " + s + " (expected P, P2, 3P or PQ)");
}

inline std::vector<table_entry> read_table(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        fail(errc::io_error, "cannot open " + path);
    }
    std::vector<table_entry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t')) {
            fields.push_back(f);
        }
        if (fields.size() == 1) {
            out.push_back({"", fields[0]});
        } else if (fields.size() == 2) {
            out.push_back({fields[0], fields[1]});
        } else {
            const std::string &name = fields[2].empty() ? fields[1] : fields[2];
            out.push_back({name, fields.back()});
        }
    }
    return out;
}

struct options {
    bool text = false;
    unsigned jobs = 1;
    long budget = -1;
    int max_crossings = -1;
};

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    options opt;
    std::string code_a;
    std::string code_b;
    std::string path;
    std::string family_name;
    std::string list_kind;
    std::vector<std::uint64_t> numbers;
    int p = 0;
    int q = 0;
    bool normalized = false;
    bool six = false;
    bool csv = false;
    bool details = false;

    CLI::App app{"Mirror-curve knot toolkit", "mirrorknot"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--text", opt.text, "plain text output instead of JSON");
    app.add_option("--jobs", opt.jobs, "worker threads (default: MIRRORKNOT_JOBS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--budget", opt.budget, "move budget for reduce")->check(CLI::NonNegativeNumber);
    app.add_option("--max-crossings", opt.max_crossings,
                   "raise the crossing limit of exponential computations (cost doubles per crossing)")
        ->check(CLI::PositiveNumber);

    auto *parse_cmd = app.add_subcommand("parse", "parse and normalize a code");
    parse_cmd->add_option("code", code_a)->required();
    auto *trace_cmd = app.add_subcommand("trace", "count components and crossings");
    trace_cmd->add_option("code", code_a)->required();
    trace_cmd->add_flag("--details", details, "also report writhe, self-writhe, faces");
    auto *reduce_cmd = app.add_subcommand("reduce", "simplify a code with R1/R2/R3, mirror and all-over moves");
    reduce_cmd->add_option("code", code_a)->required();
    auto *bracket_cmd = app.add_subcommand("bracket", "Kauffman bracket");
    bracket_cmd->add_option("code", code_a)->required();
    bracket_cmd->add_flag("--normalized", normalized, "writhe-normalized polynomial");
    auto *lpoly_cmd = app.add_subcommand("lpoly", "two-variable Kauffman polynomial");
    lpoly_cmd->add_option("code", code_a)->required();
    auto *family_cmd = app.add_subcommand("family", "L-polynomial of a family member: P, P2, 3P or PQ");
    family_cmd->add_option("name", family_name)->required();
    family_cmd->add_option("p", p)->required();
    family_cmd->add_option("q", q);
    auto *product_cmd = app.add_subcommand("product", "semigroup product of two codes");
    product_cmd->add_option("left", code_a)->required();
    product_cmd->add_option("right", code_b)->required();
    auto *decompose_cmd = app.add_subcommand("decompose", "split a code into two Kauffman states");
    decompose_cmd->add_option("code", code_a)->required();
    auto *encode_cmd = app.add_subcommand("encode", "four-number (or six-number) code");
    encode_cmd->add_option("code", code_a)->required();
    encode_cmd->add_flag("--six", six, "six-number code");
    auto *decode_cmd = app.add_subcommand("decode", "decode p q m [n] or p q m1 n1 m2 n2");
    decode_cmd->add_option("numbers", numbers)->required()->expected(3, 6);
    auto *minimal_cmd = app.add_subcommand("minimal", "minimal code over the isometry orbit");
    minimal_cmd->add_option("code", code_a)->required();
    minimal_cmd->add_flag("--six", six, "minimal six-number code");
    auto *canonical_cmd = app.add_subcommand("canonical", "canonical representation of an alternating code");
    canonical_cmd->add_option("code", code_a)->required();
    auto *enumerate_cmd = app.add_subcommand("enumerate", "count or list states, codes or isometry classes");
    enumerate_cmd->add_option("p", p)->required();
    enumerate_cmd->add_option("q", q)->required();
    enumerate_cmd->add_option("--list", list_kind, "states, codes or classes")
        ->check(CLI::IsMember({"states", "codes", "classes"}));
    auto *classify_cmd = app.add_subcommand("classify", "invariants of a table of named codes");
    classify_cmd->add_option("file", path)->required();
    classify_cmd->add_flag("--csv", csv, "CSV output");
    auto *mosaic_cmd = app.add_subcommand("mosaic", "knot mosaic of a code");
    mosaic_cmd->add_option("code", code_a)->required();
    auto *unlinkdist_cmd = app.add_subcommand("unlinkdist", "mirrors needed for, and tolerated without, an unlink");
    unlinkdist_cmd->add_option("code", code_a)->required();
    auto *render_cmd = app.add_subcommand("render", "SVG drawing; '-' writes to standard output");
    render_cmd->add_option("code", code_a)->required();
    render_cmd->add_option("out", path)->required();

    const auto report = [&](const std::string &name, const std::string &message) {
        if (opt.text) {
            err << message << "\n";
        } else {
            err << json{{"error", name}, {"message", message}}.dump() << "\n";
        }
    };

    try {
        opt.jobs = default_jobs();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        report("UsageError", e.what());
        return exit_usage;
    } catch (const error &e) {
        report(std::string(e.name()), e.what());
        return exit_usage;
    }

    const auto bracket_limit = opt.max_crossings > 0 ? opt.max_crossings : max_bracket_crossings;
    const auto l_limit = opt.max_crossings > 0 ? opt.max_crossings : max_l_crossings;
    try {
        json result;
        bool raw = false;
        if (parse_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            json labels = json::array();
            for (auto l : c.labels()) {
                labels.push_back(to_int(l));
            }
            result = {{"p", c.width()},
                      {"q", c.height()},
                      {"code", serialize_matrix(c)},
                      {"labels", labels},
                      {"crossings", c.crossing_count()}};
        } else if (trace_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            const auto d = trace(c);
            result = {{"components", d.component_count()}, {"crossings", c.crossing_count()}};
            if (details) {
                result["writhe"] = d.writhe;
                result["self_writhe"] = d.self_writhe;
                result["faces"] = d.face_count;
            }
        } else if (reduce_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            const auto r = reduce(c, opt.budget);
            json log = json::array();
            for (const auto &m : r.log.steps) {
                log.push_back(m.to_string());
            }
            result = {{"code", serialize_matrix(r.code)},
                      {"crossings", r.code.crossing_count()},
                      {"budget_exceeded", r.budget_exceeded},
                      {"log", log},
                      {"unlink", std::string(unlink_answer_name(is_unlink(c, opt.budget).answer))}};
        } else if (bracket_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            const auto b = normalized ? normalized_polynomial(c, opt.jobs, bracket_limit)
                                      : bracket(c, opt.jobs, bracket_limit);
            result = {{"polynomial", poly::to_string(b)}};
        } else if (lpoly_cmd->parsed()) {
            const auto l = l_polynomial(parse_matrix(code_a), l_limit);
            result = {{"polynomial", poly::to_string(l)}, {"terms", terms_json(l)}};
        } else if (family_cmd->parsed()) {
            const auto f = family_from_name(family_name);
            const int qq = q == 0 ? 2 : q;
            const auto l = l_family(f, p, qq);
            result = {{"family", family_name},
                      {"p", p},
                      {"q", qq},
                      {"polynomial", poly::to_string(l)},
                      {"terms", terms_json(l)}};
        } else if (product_cmd->parsed()) {
            result = {{"code", serialize_matrix(product(parse_matrix(code_a), parse_matrix(code_b)))}};
        } else if (decompose_cmd->parsed()) {
            const auto [l, r] = decompose(parse_matrix(code_a));
            result = {{"left", serialize_matrix(l)}, {"right", serialize_matrix(r)}};
        } else if (encode_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            result = six ? six_json(encode_six(c)) : four_json(encode_four(c));
        } else if (decode_cmd->parsed()) {
            const auto dim = [&](std::uint64_t v) {
                if (v < 1 || v > 64) {
                    fail(errc::range_error, "grid dimension " + std::to_string(v) + " out of range");
                }
                return static_cast<int>(v);
            };
            const int dp = dim(numbers[0]);
            const int dq = dim(numbers[1]);
            grid_code c;
            if (numbers.size() == 3) {
                c = decode_state({dp, dq, numbers[2]});
            } else if (numbers.size() == 4) {
                c = decode_four({dp, dq, numbers[2], numbers[3]});
            } else if (numbers.size() == 6) {
                c = decode_six({dp, dq, numbers[2], numbers[3], numbers[4], numbers[5]});
            } else {
                fail(errc::usage_error, "decode takes 3, 4 or 6 numbers");
            }
            result = serialize_matrix(c);
        } else if (minimal_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            result = six ? six_json(minimal_six_code(c)) : four_json(minimal_four_code(c));
        } else if (canonical_cmd->parsed()) {
            result = four_json(canonical_representation(parse_matrix(code_a)));
        } else if (enumerate_cmd->parsed()) {
            if (p < 1 || q < 1) {
                fail(errc::range_error, "grid dimensions must be positive");
            }
            const long v = label_count(p, q);
            if (list_kind == "states") {
                json states = json::array();
                for (const auto &s : enumerate_states(p, q)) {
                    states.push_back(s.m);
                }
                result = {{"p", p}, {"q", q}, {"states", states}};
            } else if (list_kind == "codes") {
                json codes = json::array();
                for (const auto &c : enumerate_all(p, q)) {
                    codes.push_back(serialize_matrix(c));
                }
                result = {{"p", p}, {"q", q}, {"codes", codes}};
            } else if (list_kind == "classes") {
                json classes = json::array();
                for (const auto &r : isometry_classes(p, q, opt.jobs)) {
                    classes.push_back({{"representative", serialize_matrix(r.representative)},
                                       {"orbit_size", r.orbit_size},
                                       {"components", r.components},
                                       {"crossings_after_reduce", r.crossings_after_reduce},
                                       {"bracket", poly::to_string(r.bracket)},
                                       {"normalized", poly::to_string(r.normalized)}});
                }
                result = {{"p", p}, {"q", q}, {"count", classes.size()}, {"classes", classes}};
            } else {
                if (2 * v > 63) {
                    fail(errc::too_large, "4^" + std::to_string(v) + " codes do not fit a 64-bit count");
                }
                result = {{"p", p},
                          {"q", q},
                          {"labels", v},
                          {"states", std::uint64_t{1} << v},
                          {"codes", std::uint64_t{1} << (2 * v)}};
            }
        } else if (classify_cmd->parsed()) {
            const auto rep = classify_table(read_table(path));
            if (csv) {
                out << to_csv(rep);
                return exit_ok;
            }
            json rows = json::array();
            for (const auto &r : rep.rows) {
                json row = {{"name", r.name}, {"code", r.code}};
                if (r.error) {
                    row["error"] = *r.error;
                } else {
                    row["crossings"] = r.crossings;
                    row["components"] = r.components;
                    row["polynomial"] = poly::to_string(r.normalized);
                }
                rows.push_back(row);
            }
            result = {{"rows", rows}, {"collisions", rep.collisions}};
        } else if (mosaic_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            const auto m = to_mosaic(c);
            if (opt.text) {
                out << mosaic_to_text(m);
                return exit_ok;
            }
            json tiles = json::array();
            for (int r = 0; r < m.n; ++r) {
                json row = json::array();
                for (int col = 0; col < m.n; ++col) {
                    row.push_back(std::string(tile_name(m.at(r, col))));
                }
                tiles.push_back(row);
            }
            result = {{"n", m.n},
                      {"tiles", tiles},
                      {"crossing_tiles", m.crossing_tiles()},
                      {"components", mosaic_components(m)},
                      {"suitably_connected", suitably_connected(m)},
                      {"mosaic_number_upper_bound", mosaic_number_upper_bound(c)},
                      {"grid_diagram_dimension", grid_diagram_dimension(c)}};
        } else if (unlinkdist_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            result = {{"min_mirrors_to_unlink", min_mirrors_to_unlink(c)},
                      {"max_mirrors_without_unlink", max_mirrors_without_unlink(c)}};
        } else if (render_cmd->parsed()) {
            const auto c = parse_matrix(code_a);
            const auto model = svg_layout(c);
            if (path == "-") {
                out << render_svg(model);
                raw = true;
            } else {
                write_svg(c, path);
                result = {{"path", path},
                          {"components", model.components.size()},
                          {"gaps", model.gaps}};
            }
        }
        if (!raw) {
            out << (opt.text ? as_text(result) : result.dump() + "\n");
        }
        return exit_ok;
    } catch (const error &e) {
        report(std::string(e.name()), e.what());
        return is_usage_error(e.code()) ? exit_usage : exit_domain;
    }
}

} // namespace mirrorknot::cli
