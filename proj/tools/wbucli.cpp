// Command-line frontend: reads JSON descriptions of weighted building sets,
// perspectives, configurations, curves and jets, dispatches the library and
// prints results as JSON or plain text.

#include "wbu/json_io.hpp"
#include "wbu/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>

using namespace wbu;
using nlohmann::json;

namespace {

struct Output {
    bool as_json = true;
    json doc = json::object();
    std::string text;

    void emit() const {
        if (as_json)
            std::cout << doc.dump(2) << "\n";
        else
            std::cout << text;
    }
};

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json load(const std::string& path, json& hashes) {
    std::string bytes = read_file(path);
    hashes[path] = input_hash(bytes);
    return parse_json(bytes, path);
}

std::vector<Exact> point_from_file(const std::string& path, json& hashes) {
    json j = load(path, hashes);
    std::vector<Exact> out;
    for (const auto& r : rat_vector_from_json(j, path)) out.emplace_back(r);
    return out;
}

json exact_vector_to_json(const std::vector<Exact>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(exact_to_json(e));
    return a;
}

std::vector<int> parse_weight_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw parse_error("empty weight list");
    return out;
}

// ---------------------------------------------------------------------------
// verify suites

int verify_smoothness(Output& out, std::uint64_t seed) {
    VerifyConfig cfg;
    cfg.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.3, 1.7);
    int total = 0, passed = 0;
    for (int w1 : {1, 2, 3})
        for (int w2 : {1, 2, 3})
            for (int w3 : {1, 2, 3})
                for (int s : {1, -1})
                    for (int st : {1, -1}) {
                        WeightVector w({w1, w2, w3});
                        std::vector<double> y0{0.0, st * U(rng), (rng() % 2 ? 1 : -1) * U(rng)};
                        std::vector<double> dir{1.0, 0.2 * U(rng) * st, 0.2 * U(rng)};
                        auto map = [&](const std::vector<double>& y) {
                            return single_transition(w, 0, s, 1, st, y);
                        };
                        ++total;
                        if (fd_smoothness(map, y0, dir, cfg).pass) ++passed;
                    }
    // sqrt-type control must fail
    auto control = [](const std::vector<double>& x) {
        return std::vector<double>{std::sqrt(std::max(0.0, x[0]))};
    };
    bool control_fails = !fd_smoothness(control, {0.0}, {1.0}, cfg).pass;
    bool ok = passed == total && control_fails;
    out.doc["smoothness"] = {{"transitions_checked", total},
                             {"transitions_passed", passed},
                             {"sqrt_control_fails", control_fails},
                             {"pass", ok}};
    out.text += "smoothness: " + std::to_string(passed) + "/" + std::to_string(total) +
                " transitions pass; sqrt control " + (control_fails ? "fails as designed" : "UNEXPECTEDLY PASSES") +
                "\n";
    return ok ? 0 : 1;
}

int verify_nests(Output& out, std::uint64_t seed) {
    RatSampler rs(seed);
    int sets = 0, agreements = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // random separated coordinate-subspace sets in R^4
        BuildingSet bs;
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            std::set<std::vector<int>> zsets;
            int n = 2 + rs.pick(3);
            while (static_cast<int>(zsets.size()) < n) {
                std::vector<int> z;
                for (int c = 0; c < 4; ++c)
                    if (rs.pick(2)) z.push_back(c);
                if (!z.empty()) zsets.insert(z);
            }
            std::vector<WeightedSubspace> elems;
            int id = 0;
            for (const auto& z : zsets) {
                std::map<int, int> w;
                for (int c : z) w[c] = 1 + rs.pick(3);
                elems.push_back(make_coord_subspace("E" + std::to_string(id++), 4, z, w));
            }
            BuildingSet cand = make_building_set(4, std::move(elems));
            if (check_separated(cand).separated) {
                bs = cand;
                found = true;
            }
        }
        if (!found) continue;
        ++sets;
        auto oracle = nest_oracle(bs);
        auto enumd = enumerate_nests(bs);
        std::set<std::vector<int>> a(oracle.nests.begin(), oracle.nests.end());
        std::set<std::vector<int>> b(enumd.begin(), enumd.end());
        if (a == b) ++agreements;
    }
    bool fm_ok = true;
    for (int s = 3; s <= 4; ++s) {
        BuildingSet bs = fm_building_set(s, 1, {1});
        auto oracle = nest_oracle(bs);
        auto enumd = enumerate_nests(bs, 26);
        std::set<std::vector<int>> a(oracle.nests.begin(), oracle.nests.end());
        std::set<std::vector<int>> b(enumd.begin(), enumd.end());
        if (a != b) fm_ok = false;
    }
    bool ok = sets > 0 && agreements == sets && fm_ok;
    out.doc["nests"] = {{"random_sets", sets}, {"agreements", agreements}, {"fm_agree", fm_ok}, {"pass", ok}};
    out.text += "nests: oracle agreement on " + std::to_string(agreements) + "/" + std::to_string(sets) +
                " random sets; fm " + (fm_ok ? "ok" : "MISMATCH") + "\n";
    // exploratory: control sets of a trivially weighted non-separated set
    BuildingSet axes = make_building_set(3, {make_coord_subspace("G4", 3, {0, 2}, {{0, 1}, {2, 1}}),
                                             make_coord_subspace("G5", 3, {1, 2}, {{1, 1}, {2, 1}})});
    auto search = control_set_nest_search(axes, seed, 50);
    out.doc["trivial_control_search"] = {{"tuples", search.tuples},
                                         {"nest_control_sets", search.nest_control_sets},
                                         {"note", "exploratory; nothing asserted"}};
    out.text += "trivial-weighting control search: " + std::to_string(search.nest_control_sets) + "/" +
                std::to_string(search.tuples) + " sampled control sets were nests (no assertion)\n";
    return ok ? 0 : 1;
}

int verify_strata(Output& out, std::uint64_t seed) {
    BuildingSet bs = make_building_set(
        6, {make_coord_subspace("B", 6, {0, 1, 2}, {{0, 1}, {1, 2}, {2, 1}}),
            make_coord_subspace("A", 6, {0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 1}, {3, 2}, {4, 3}})});
    Perspective p;
    p.nest = {"A", "B"};
    p.h = {{"A", 4}, {"B", 2}};
    p.s = {{"A", 1}, {"B", 1}};
    ChartContext ctx(bs, p);
    RatSampler rs(seed);
    std::vector<std::vector<std::vector<Exact>>> seqs;
    for (int k = 0; k < 60; ++k) {
        std::vector<std::vector<Exact>> seq;
        Rat tA0 = rs.pick(2) ? rs.positive_rat() : Rat(0);
        Rat tB0 = rs.pick(2) ? rs.positive_rat() : Rat(0);
        bool dropA = rs.pick(2), dropB = rs.pick(2);
        for (int n = 1; n <= 6; ++n) {
            std::vector<Exact> y;
            for (int i = 0; i < 6; ++i) y.emplace_back(rs.nonzero_rat());
            y[2] = Exact(tB0);
            y[4] = Exact(tA0);
            seq.push_back(y);
        }
        std::vector<Exact> limit = seq.back();
        if (dropA) limit[4] = Exact(Rat(0));
        if (dropB) limit[2] = Exact(Rat(0));
        seq.push_back(limit);
        seqs.push_back(seq);
    }
    auto rep = stratum_closure(ctx, seqs);
    // chart origins carry the whole nest
    std::vector<Exact> zero(6, Exact(Rat(0)));
    bool origin_ok = control_set(ctx, zero) == std::vector<std::string>{"A", "B"};
    bool ok = rep.pass && origin_ok;
    out.doc["strata"] = {{"sequences", rep.sequences},
                         {"violations", rep.violations.size()},
                         {"origin_full_nest", origin_ok},
                         {"pass", ok}};
    out.text += "strata: " + std::to_string(rep.sequences) + " sequences, " +
                std::to_string(rep.violations.size()) + " violations; origin control set " +
                (origin_ok ? "= full nest" : "WRONG") + "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted blow-ups of coordinate-subspace arrangements and "
                 "Fulton-MacPherson configuration models"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "output format: json or text")->check(CLI::IsMember({"json", "text"}));

    // ---- building-set commands
    std::string bs_path, persp_path, persp2_path, point_path, element, nest_csv, h_csv;
    auto* c_check = app.add_subcommand("check", "separation, uniform alignment and weighted validity");
    c_check->add_option("building-set", bs_path)->required();
    auto* c_nests = app.add_subcommand("nests", "enumerate all nests");
    c_nests->add_option("building-set", bs_path)->required();
    auto* c_factors = app.add_subcommand("factors", "factors of an element of the arrangement");
    c_factors->add_option("building-set", bs_path)->required();
    c_factors->add_option("--element", element, "element name")->required();
    auto* c_tableau = app.add_subcommand("tableau", "weight tableau of a nest");
    c_tableau->set_help_flag("--help", "print help");
    c_tableau->add_option("building-set", bs_path)->required();
    c_tableau->add_option("--nest", nest_csv, "comma-separated element names")->required();
    c_tableau->add_option("--h", h_csv, "boxed columns as name=col,...");

    auto* c_chart = app.add_subcommand("chart", "evaluate a building chart");
    c_chart->add_option("building-set", bs_path)->required();
    c_chart->add_option("perspective", persp_path)->required();
    c_chart->add_option("--point", point_path, "corner point (or blow-up point with --inverse)")->required();
    bool inverse = false;
    c_chart->add_flag("--inverse", inverse, "map a blow-up point to corner coordinates");

    auto* c_blowdown = app.add_subcommand("blowdown", "blow a corner point down to the base");
    c_blowdown->add_option("building-set", bs_path)->required();
    c_blowdown->add_option("perspective", persp_path)->required();
    c_blowdown->add_option("--point", point_path)->required();

    auto* c_transition = app.add_subcommand("transition", "transition between two perspectives");
    c_transition->add_option("building-set", bs_path)->required();
    c_transition->add_option("perspective", persp_path)->required();
    c_transition->add_option("perspective2", persp2_path)->required();
    c_transition->add_option("--point", point_path)->required();

    auto* c_control = app.add_subcommand("control-set", "control set of a corner point");
    c_control->add_option("building-set", bs_path)->required();
    c_control->add_option("perspective", persp_path)->required();
    c_control->add_option("--point", point_path)->required();

    auto* c_weak = app.add_subcommand("weak-singular", "weak-submanifold failure at a corner point");
    c_weak->add_option("building-set", bs_path)->required();
    c_weak->add_option("perspective", persp_path)->required();
    c_weak->add_option("--point", point_path)->required();

    // ---- fm commands
    auto* c_fm = app.add_subcommand("fm", "Fulton-MacPherson local models");
    c_fm->require_subcommand(1);
    int fm_s = 0;
    std::string fm_weights = "1", fm_nest_path, fm_config_path, fm_curves_path, fm_model_path;
    auto add_fm_common = [&](CLI::App* c) {
        c->add_option("--s", fm_s, "number of points");
        c->add_option("--weights", fm_weights, "comma-separated weight sequence");
    };
    auto* c_fm_forest = c_fm->add_subcommand("forest", "deterministic covering forest of a nest");
    add_fm_common(c_fm_forest);
    c_fm_forest->add_option("--nest", fm_nest_path, "nest as JSON [[1,2],[1,2,3],...]")->required();
    auto* c_fm_chart = c_fm->add_subcommand("chart", "chart a bulk configuration");
    add_fm_common(c_fm_chart);
    c_fm_chart->add_option("--nest", fm_nest_path)->required();
    c_fm_chart->add_option("--config", fm_config_path, "s x m rational configuration")->required();
    auto* c_fm_blowdown = c_fm->add_subcommand("blowdown", "blow a model point down");
    c_fm_blowdown->add_option("--model", fm_model_path)->required();
    auto* c_fm_limit = c_fm->add_subcommand("limit", "collision limit of polynomial curves");
    add_fm_common(c_fm_limit);
    c_fm_limit->add_option("--curves", fm_curves_path)->required();
    auto* c_fm_screens = c_fm->add_subcommand("screens", "render the screens of a model point");
    c_fm_screens->add_option("--model", fm_model_path)->required();

    // ---- proj commands
    auto* c_proj = app.add_subcommand("proj", "projective classes");
    c_proj->require_subcommand(1);
    std::string proj_weights, proj_n_path;
    auto* c_proj_canon = c_proj->add_subcommand("canonicalize", "canonical projective representative");
    c_proj_canon->add_option("--weights", proj_weights)->required();
    c_proj_canon->add_option("--n", proj_n_path, "normal vector as rationals")->required();
    auto* c_proj_sing = c_proj->add_subcommand("singular", "orbifold singularity of a class");
    c_proj_sing->add_option("--weights", proj_weights)->required();
    c_proj_sing->add_option("--n", proj_n_path)->required();

    // ---- jet commands
    auto* c_jet = app.add_subcommand("jet", "second-order jet pairs");
    c_jet->require_subcommand(1);
    std::string jet_pair_path, jet_blown_path, jet_f_path, jet_c1_path, jet_c2_path, jet_mode = "literal";
    auto* c_jet_off = c_jet->add_subcommand("offsets", "Taylor-remainder offsets of a pair");
    c_jet_off->add_option("--pair", jet_pair_path)->required();
    auto* c_jet_chart = c_jet->add_subcommand("chart", "blow a separated pair up");
    c_jet_chart->add_option("--pair", jet_pair_path)->required();
    auto* c_jet_down = c_jet->add_subcommand("blowdown", "blow a blown jet pair down");
    c_jet_down->add_option("--blown", jet_blown_path)->required();
    auto* c_jet_limit = c_jet->add_subcommand("limit", "symbolic collision limit of prolonged jets");
    c_jet_limit->add_option("--f", jet_f_path, "polynomial")->required();
    c_jet_limit->add_option("--curve1", jet_c1_path)->required();
    c_jet_limit->add_option("--curve2", jet_c2_path)->required();
    auto* c_jet_hol = c_jet->add_subcommand("holonomic", "holonomicity of a blown jet pair");
    c_jet_hol->add_option("--blown", jet_blown_path)->required();
    c_jet_hol->add_option("--mode", jet_mode, "literal or derived")->check(CLI::IsMember({"literal", "derived"}));

    // ---- verify
    auto* c_verify = app.add_subcommand("verify", "numerical verification harness");
    c_verify->require_subcommand(1);
    std::uint64_t seed = VerifyConfig{}.seed;
    c_verify->add_option("--seed", seed, "random seed");
    auto* c_v_all = c_verify->add_subcommand("all");
    auto* c_v_smooth = c_verify->add_subcommand("smoothness");
    auto* c_v_nests = c_verify->add_subcommand("nests");
    auto* c_v_strata = c_verify->add_subcommand("strata");

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.as_json = format == "json";
    json hashes = json::object();
    int rc = 0;
    try {
        if (*c_check) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            auto sep = check_separated(bs);
            out.doc["separated"] = sep.separated;
            out.text += std::string("separated: ") + (sep.separated ? "yes" : "no") + "\n";
            if (!sep.separated) {
                out.doc["witness"] = sep.witness;
                out.text += "  witness: " + sep.witness + "\n";
            }
            auto diag = check_weighted_building_set(bs, 12, 26);
            out.doc["weighted_valid"] = diag.pass;
            out.doc["failures"] = diag.failures;
            out.text += std::string("weighted building set: ") + (diag.pass ? "pass" : "fail") + "\n";
            for (const auto& f : diag.failures) out.text += "  " + f + "\n";
        } else if (*c_nests) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            auto nests = enumerate_nests(bs, 26);
            json arr = json::array();
            for (const auto& nest : nests) {
                json names = json::array();
                for (int g : nest) names.push_back(bs[g].name);
                arr.push_back(names);
            }
            out.doc["count"] = nests.size();
            out.doc["nests"] = arr;
            out.text += std::to_string(nests.size()) + " nests\n";
            for (const auto& nest : nests) {
                out.text += "  {";
                for (size_t k = 0; k < nest.size(); ++k) out.text += (k ? "," : "") + bs[nest[k]].name;
                out.text += "}\n";
            }
        } else if (*c_factors) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            Arrangement arr = arrangement(bs);
            int found = -1;
            for (size_t i = 0; i < arr.elements.size(); ++i)
                if (arr.elements[i].name == element) found = static_cast<int>(i);
            if (found < 0) throw domain_error("no arrangement element named " + element);
            json names = json::array();
            std::string line;
            for (int g : arr.elements[static_cast<size_t>(found)].factors) {
                names.push_back(bs[g].name);
                line += (line.empty() ? "" : ", ") + bs[g].name;
            }
            out.doc["factors"] = names;
            out.text += "factors of " + element + ": " + line + "\n";
        } else if (*c_tableau) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            std::vector<int> nest;
            std::stringstream ss(nest_csv);
            std::string item;
            while (std::getline(ss, item, ',')) nest.push_back(bs.index_of(item));
            TableauOptions opts;
            if (!h_csv.empty()) {
                std::stringstream hs(h_csv);
                while (std::getline(hs, item, ',')) {
                    auto eq = item.find('=');
                    if (eq == std::string::npos) throw parse_error("--h expects name=col pairs");
                    opts.boxed[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
                }
            }
            std::string text = tableau_render(bs, nest, opts);
            out.doc["tableau"] = text;
            out.text += text;
        } else if (*c_chart) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            ChartContext ctx(bs, perspective_from_json(load(persp_path, hashes)));
            if (inverse) {
                BlowupPoint p = blowup_point_from_json(load(point_path, hashes));
                auto y = building_chart_fwd(ctx, p);
                out.doc["corner"] = exact_vector_to_json(y);
                out.text += "corner coordinates:";
                for (const auto& e : y) out.text += " " + (e.is_rational() ? format_rat(e.rational()) : fmt17(e.to_double()));
                out.text += "\n";
            } else {
                auto y = point_from_file(point_path, hashes);
                BlowupPoint p = building_chart_inv(ctx, y);
                out.doc["point"] = blowup_point_to_json(bs, p);
                out.text += "components:\n";
                for (int g = 0; g < bs.size(); ++g) {
                    const auto& comp = p.comps.at(bs[g].name);
                    out.text += "  " + bs[g].name + (comp.divisor ? " (divisor):" : " (bulk):");
                    for (const auto& e : comp.v)
                        out.text += " " + (e.is_rational() ? format_rat(e.rational()) : fmt17(e.to_double()));
                    out.text += "\n";
                }
            }
        } else if (*c_blowdown) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            ChartContext ctx(bs, perspective_from_json(load(persp_path, hashes)));
            auto x = building_blow_down(ctx, point_from_file(point_path, hashes));
            out.doc["base"] = exact_vector_to_json(x);
            out.text += "base point:";
            for (const auto& e : x) out.text += " " + (e.is_rational() ? format_rat(e.rational()) : fmt17(e.to_double()));
            out.text += "\n";
        } else if (*c_transition) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            ChartContext from(bs, perspective_from_json(load(persp_path, hashes)));
            ChartContext to(bs, perspective_from_json(load(persp2_path, hashes)));
            auto z = building_transition(from, point_from_file(point_path, hashes), to);
            out.doc["corner"] = exact_vector_to_json(z);
            out.text += "transition image:";
            for (const auto& e : z) out.text += " " + (e.is_rational() ? format_rat(e.rational()) : fmt17(e.to_double()));
            out.text += "\n";
        } else if (*c_control) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            ChartContext ctx(bs, perspective_from_json(load(persp_path, hashes)));
            auto cs = control_set(ctx, point_from_file(point_path, hashes));
            out.doc["control_set"] = cs;
            out.text += "control set: {";
            for (size_t k = 0; k < cs.size(); ++k) out.text += (k ? "," : "") + cs[k];
            out.text += "}\n";
        } else if (*c_weak) {
            BuildingSet bs = building_set_from_json(load(bs_path, hashes));
            ChartContext ctx(bs, perspective_from_json(load(persp_path, hashes)));
            bool sing = weak_singularity(ctx, point_from_file(point_path, hashes));
            out.doc["weak_singular"] = sing;
            out.text += std::string("weak singular: ") + (sing ? "yes" : "no") + "\n";
        } else if (*c_fm) {
            std::vector<int> w = parse_weight_list(fm_weights);
            if (*c_fm_forest || *c_fm_chart || *c_fm_limit) {
                if (*c_fm_forest || *c_fm_chart) {
                    json nj = load(fm_nest_path, hashes);
                    std::vector<IndexSet> members;
                    for (const auto& I : nj) members.push_back(index_set_from_json(I));
                    IndexNest nest(fm_s, members);
                    auto cover = covering_forest(nest);
                    if (*c_fm_forest) {
                        json parent = json::array();
                        for (int i = 0; i < fm_s; ++i)
                            parent.push_back(cover.forest.is_root(i) ? 0 : cover.forest.parent[static_cast<size_t>(i)] + 1);
                        json controls = json::object();
                        for (const auto& [I, ct] : cover.controls) controls[index_set_name(I)] = index_set_to_json(ct);
                        out.doc["parent"] = parent;
                        out.doc["controls"] = controls;
                        out.text += "parent: " + parent.dump() + "\ncontrols: " + controls.dump() + "\n";
                    } else {
                        json cj = load(fm_config_path, hashes);
                        Config<double> config;
                        for (const auto& row : cj) {
                            std::vector<double> x;
                            for (const auto& v : row) x.push_back(v.is_number() ? v.get<double>() : to_double(rat_from_json(v)));
                            config.push_back(x);
                        }
                        auto p = fm_chart(w, nest, cover.forest, config);
                        out.doc["model"] = model_point_to_json(p);
                        out.text += screens_render(p);
                    }
                } else {
                    auto p = curve_limit(w, curves_from_json(load(fm_curves_path, hashes)));
                    out.doc["model"] = model_point_to_json(p);
                    out.text += screens_render(p);
                }
            } else if (*c_fm_blowdown) {
                auto p = model_point_from_json(load(fm_model_path, hashes));
                auto config = fm_blow_down(p);
                json rows = json::array();
                for (const auto& x : config) {
                    json row = json::array();
                    for (double v : x) row.push_back(v);
                    rows.push_back(row);
                }
                out.doc["config"] = rows;
                for (const auto& x : config) {
                    out.text += "(";
                    for (size_t j = 0; j < x.size(); ++j) out.text += (j ? ", " : "") + fmt17(x[j]);
                    out.text += ")\n";
                }
            } else if (*c_fm_screens) {
                auto p = model_point_from_json(load(fm_model_path, hashes));
                std::string text = screens_render(p);
                out.doc["screens"] = text;
                out.text += text;
            }
        } else if (*c_proj) {
            WeightVector w(parse_weight_list(proj_weights));
            auto n_rat = rat_vector_from_json(load(proj_n_path, hashes), proj_n_path);
            if (*c_proj_canon) {
                std::vector<double> n;
                for (const auto& r : n_rat) n.push_back(to_double(r));
                auto c = projective_canonicalize(w, n);
                json arr = json::array();
                out.text += "canonical representative:";
                for (double v : c) {
                    arr.push_back(v);
                    out.text += " " + fmt17(v);
                }
                out.text += "\n";
                out.doc["class"] = arr;
            } else {
                std::vector<Exact> n;
                for (const auto& r : n_rat) n.emplace_back(r);
                bool sing = projective_is_singular(w, n);
                out.doc["singular"] = sing;
                out.text += std::string("singular: ") + (sing ? "yes" : "no") + "\n";
            }
        } else if (*c_jet) {
            if (*c_jet_off) {
                auto p = jet_pair_from_json(load(jet_pair_path, hashes));
                auto o = jet_offsets(p);
                json dx = json::array(), dyp = json::array(), dypp = json::array();
                for (const auto& v : o.dx) dx.push_back(rat_to_json(v));
                for (const auto& v : o.dyp) dyp.push_back(rat_to_json(v));
                for (const auto& v : o.dypp.upper) dypp.push_back(rat_to_json(v));
                out.doc["offsets"] = {{"dx", dx}, {"dy", rat_to_json(o.dy)}, {"dyp", dyp}, {"dypp", dypp}};
                out.text += "dx " + dx.dump() + " dy " + format_rat(o.dy) + " dyp " + dyp.dump() + " dypp " +
                            dypp.dump() + "\n";
            } else if (*c_jet_chart) {
                auto pr = jet_pair_from_json(load(jet_pair_path, hashes));
                JetPair2<QExt> p{jet_cast<QExt>(pr.first), jet_cast<QExt>(pr.second)};
                auto b = jet_chart(p);
                out.doc["blown"] = blown_jet_to_json(b);
                out.text += out.doc["blown"].dump(2) + "\n";
            } else if (*c_jet_down) {
                auto b = blown_jet_from_json(load(jet_blown_path, hashes));
                auto p = jet_blow_down(b);
                out.doc["pair"] = {{"first", jet_to_json(p.first)}, {"second", jet_to_json(p.second)}};
                out.text += out.doc["pair"].dump(2) + "\n";
            } else if (*c_jet_limit) {
                Polynomial f = polynomial_from_json(load(jet_f_path, hashes));
                auto read_curve = [&](const std::string& path) {
                    json cj = load(path, hashes);
                    std::vector<RatPoly> out_poly;
                    for (const auto& coord : cj) {
                        RatPoly poly;
                        for (const auto& term : coord) {
                            int e = term.at(0).get<int>();
                            if (static_cast<int>(poly.size()) <= e) poly.resize(static_cast<size_t>(e) + 1, Rat(0));
                            poly[static_cast<size_t>(e)] = rat_from_json(term.at(1));
                        }
                        out_poly.push_back(poly);
                    }
                    return out_poly;
                };
                auto b = jet_limit(f, read_curve(jet_c1_path), read_curve(jet_c2_path));
                out.doc["blown"] = blown_jet_to_json(b);
                out.doc["holonomic_literal"] = holonomic_predicate(b, HolonomicMode::paper_literal);
                out.doc["holonomic_derived"] = holonomic_predicate(b, HolonomicMode::derived);
                out.text += out.doc["blown"].dump(2) + "\n";
            } else if (*c_jet_hol) {
                auto br = blown_jet_from_json(load(jet_blown_path, hashes));
                JetBlown2<QExt> b;
                b.base = jet_cast<QExt>(br.base);
                b.lambda = QExt(br.lambda);
                for (const auto& v : br.dx) b.dx.emplace_back(v);
                b.dy = QExt(br.dy);
                for (const auto& v : br.dyp) b.dyp.emplace_back(v);
                b.dypp = SymForm<QExt>(br.dypp.m);
                for (size_t k = 0; k < br.dypp.upper.size(); ++k) b.dypp.upper[k] = QExt(br.dypp.upper[k]);
                HolonomicMode mode = jet_mode == "literal" ? HolonomicMode::paper_literal : HolonomicMode::derived;
                if (mode == HolonomicMode::paper_literal)
                    out.text += "note: the oracle-determined contraction constant is " +
                                format_rat(holonomic_contraction_constant()) +
                                "; the literal mode asserts constant 1\n";
                bool h = holonomic_predicate(b, mode);
                out.doc["holonomic"] = h;
                out.doc["mode"] = jet_mode;
                out.doc["oracle_constant"] = format_rat(holonomic_contraction_constant());
                out.text += std::string("holonomic (") + jet_mode + "): " + (h ? "yes" : "no") + "\n";
            }
        } else if (*c_verify) {
            if (*c_v_all) {
                rc |= verify_smoothness(out, seed);
                rc |= verify_nests(out, seed);
                rc |= verify_strata(out, seed);
            } else if (*c_v_smooth) {
                rc = verify_smoothness(out, seed);
            } else if (*c_v_nests) {
                rc = verify_nests(out, seed);
            } else if (*c_v_strata) {
                rc = verify_strata(out, seed);
            }
            out.doc["seed"] = seed;
            out.text += "seed: " + std::to_string(seed) + "\n";
        }
    } catch (const parse_error& e) {
        json err{{"error", e.what()}, {"kind", "parse"}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const cap_error& e) {
        json err{{"error", e.what()}, {"kind", "cap"}};
        std::cout << err.dump(2) << "\n";
        return 3;
    } catch (const domain_error& e) {
        json err{{"error", e.what()}, {"kind", "domain"}};
        std::cout << err.dump(2) << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        json err{{"error", e.what()}, {"kind", "parse"}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    out.doc["inputs"] = hashes;
    if (!hashes.empty()) out.text += "inputs: " + hashes.dump() + "\n";
    out.emit();
    return rc;
}
