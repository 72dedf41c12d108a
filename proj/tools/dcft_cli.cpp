#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcft/dcft.hpp"
#include "dcft/report.hpp"
#include "dcft/suite.hpp"

namespace {

using dcft::Integer;
using Json = dcft::report::Json;
namespace report = dcft::report;

enum Exit { kPass = 0, kAssertion = 1, kInvalid = 2, kGuard = 3 };

constexpr const char* kGuardEnv = "DCFT_SIZE_GUARD";

// Values from the command line; unset means "not given".
struct Flags {
    std::string config_path;
    std::string out_dir;
    bool json = false;
    std::optional<std::size_t> size_guard;

    std::vector<std::string> positional;
    std::optional<std::size_t> max_degree, sym_max, degree;
    std::optional<std::string> levels, modulus, poly;
    std::optional<long> pmax;
};

// Flags over config file over defaults.
class Resolver {
  public:
    Resolver(const Flags& f, Json config) : flags_(f), config_(std::move(config)) {}

    template <class T>
    T get(const std::optional<T>& flag, const std::string& key, const T& fallback)
    {
        T v = fallback;
        std::string source = "default";
        if (flag) {
            v = *flag;
            source = "flag";
        } else if (config_.contains(key)) {
            v = config_[key].get<T>();
            source = "config";
        }
        sources_[key] = source;
        return v;
    }

    std::vector<std::string> positional(const std::string& key)
    {
        if (!flags_.positional.empty()) {
            sources_[key] = "flag";
            return flags_.positional;
        }
        if (config_.contains(key)) {
            sources_[key] = "config";
            std::vector<std::string> out;
            const Json& v = config_[key];
            if (v.is_array())
                for (const auto& x : v) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
            else
                out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            return out;
        }
        sources_[key] = "default";
        return {};
    }

    std::size_t size_guard(std::size_t fallback)
    {
        if (flags_.size_guard) {
            sources_["size_guard"] = "flag";
            return *flags_.size_guard;
        }
        if (config_.contains("size_guard")) {
            sources_["size_guard"] = "config";
            return config_["size_guard"].get<std::size_t>();
        }
        if (const char* env = std::getenv(kGuardEnv)) {
            sources_["size_guard"] = "env";
            try {
                return std::stoull(env);
            } catch (const std::exception&) {
                throw dcft::InvalidInput(std::string(kGuardEnv) + " is not a number: " + env);
            }
        }
        sources_["size_guard"] = "default";
        return fallback;
    }

    const Json& sources() const { return sources_; }

  private:
    const Flags& flags_;
    Json config_;
    Json sources_ = Json::object();
};

const std::vector<std::string> kConfigKeys{"size_guard", "max_degree", "sym_max", "degree", "levels", "modulus",
                                           "poly",       "pmax",       "group",   "space",  "d",      "discriminants",
                                           "pairs"};

Json load_config(const std::string& path)
{
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw dcft::InvalidInput("cannot read config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw dcft::InvalidInput("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw dcft::InvalidInput("config file must hold a JSON object");
    for (const auto& [k, v] : j.items())
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), k) == kConfigKeys.end())
            throw dcft::InvalidInput("unknown config key '" + k + "'");
    return j;
}

// ---- parsing of inputs --------------------------------------------------------------------

Integer parse_int(const std::string& s)
{
    try {
        return dcft::parse_integer(s);
    } catch (const std::exception&) {
        throw dcft::InvalidInput("not an integer: '" + s + "'");
    }
}

std::vector<Integer> parse_list(const std::string& s)
{
    std::vector<Integer> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(parse_int(item));
    if (out.empty()) throw dcft::InvalidInput("empty list '" + s + "'");
    return out;
}

Integer discriminant(const std::string& s)
{
    Integer d = parse_int(s);
    dcft::require_imaginary_fundamental(d);
    return d;
}

dcft::FiniteGroup parse_group(const std::string& name)
{
    static const std::regex cyclic("C([0-9]+)");
    std::smatch m;
    if (std::regex_match(name, m, cyclic)) {
        const unsigned long n = std::stoul(m[1]);
        if (n == 0 || n > 4096) throw dcft::InvalidInput("cyclic group order must lie in [1, 4096]");
        return dcft::cyclic_group(n);
    }
    return dcft::catalog_group(name);
}

dcft::FiniteSimplicialSet parse_space(const std::string& name, std::size_t n_max)
{
    static const std::regex wedge("wedge([0-9]+)");
    std::smatch m;
    if (name == "point") return dcft::point_simplicial_set(n_max);
    if (name == "circle") return dcft::circle(n_max);
    if (name == "sphere2") return dcft::sphere2(n_max);
    if (std::regex_match(name, m, wedge)) return dcft::wedge_of_circles(std::stoul(m[1]), n_max);
    throw dcft::InvalidInput("unknown space '" + name + "' (point, circle, sphere2, wedge<k>)");
}

dcft::Ideal parse_modulus(const dcft::ImagQuadField& f, const std::string& s)
{
    std::vector<Integer> v = parse_list(s);
    if (v.size() == 1) {
        if (v[0] == 0) throw dcft::InvalidInput("modulus must be nonzero");
        return dcft::principal_ideal(f, {v[0], 0});
    }
    if (v.size() == 3) return dcft::make_ideal(f, v[0], v[1], v[2]);
    throw dcft::InvalidInput("modulus is 'm' or a Hermite triple 'a,b,c'");
}

std::vector<Integer> parse_levels(const std::string& s)
{
    std::vector<Integer> l = parse_list(s);
    for (const auto& n : l)
        if (n < 2) throw dcft::InvalidInput("levels must be at least 2");
    return l;
}

std::string join(const std::vector<Integer>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s;
}

Json int_list(const std::vector<Integer>& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(report::integer(x));
    return a;
}

void require_one(const std::vector<std::string>& p, const std::string& what)
{
    if (p.size() != 1) throw dcft::InvalidInput("expected exactly one " + what);
}

// ---- commands ---------------------------------------------------------------------------------

struct Context {
    Resolver& r;
    const Flags& f;
    Json config = Json::object();  // effective configuration, echoed in the report
};

Json cmd_homology(Context& c)
{
    auto p = c.r.positional("group");
    require_one(p, "group");
    const std::size_t maxdeg = c.r.get(c.f.max_degree, "max_degree", std::size_t{3});
    const std::size_t guard = c.r.size_guard(dcft::kDefaultSizeGuard);
    c.config["group"] = p[0];
    c.config["max_degree"] = maxdeg;
    c.config["size_guard"] = guard;
    dcft::FiniteGroup g = parse_group(p[0]);

    Json doc = report::document("homology", c.config);
    dcft::ChainComplex bar = dcft::bar_chains(g, maxdeg + 1, guard);
    auto h = dcft::homology_all(bar);
    Json groups = Json::array();
    for (std::size_t i = 0; i <= maxdeg; ++i)
        groups.push_back(Json{{"degree", report::tagged(Integer(static_cast<long>(i)), "input")}, {"H", report::group(h[i], "group_homology")}});
    doc["results"].push_back(Json{{"group", g.label()}, {"order", report::tagged(Integer(static_cast<long>(g.order())), "FiniteGroup")},
                                  {"homology", groups}});
    const bool dd = !dcft::find_violation(bar).has_value();
    doc["checks"].push_back(report::check({"bar differential squares to zero", dd ? "0" : "nonzero", "0", dd, "bar_chains"}));
    if (maxdeg >= 1) {
        const auto ab = dcft::abelianization(g).to_string();
        doc["checks"].push_back(report::check({"H_1 = G^ab", h[1].to_string(), ab, h[1].to_string() == ab, "group_homology; abelianization"}));
    }
    return doc;
}

Json cmd_derived(Context& c)
{
    auto p = c.r.positional("group");
    require_one(p, "group");
    const std::size_t maxdeg = c.r.get(c.f.max_degree, "max_degree", std::size_t{2});
    const std::size_t guard = c.r.size_guard(dcft::kDefaultSizeGuard);
    c.config["group"] = p[0];
    c.config["max_degree"] = maxdeg;
    c.config["size_guard"] = guard;
    dcft::FiniteGroup g = parse_group(p[0]);

    Json doc = report::document("derived-ab", c.config);
    dcft::DerivedAbelianization d = dcft::derived_abelianization(g, maxdeg + 1, guard);
    Json pis = Json::array();
    for (std::size_t i = 0; i <= maxdeg; ++i) {
        const dcft::FgAbGroup v = dcft::pi(d, i);
        pis.push_back(Json{{"degree", report::tagged(Integer(static_cast<long>(i)), "input")}, {"pi", report::group(v, "derived_abelianization")}});
        const dcft::FgAbGroup other = i == 0 ? dcft::abelianization(g) : dcft::group_homology(g, i + 1, guard);
        const std::string name = i == 0 ? "pi_0 = G^ab" : "pi_" + std::to_string(i) + " = H_" + std::to_string(i + 1);
        doc["checks"].push_back(report::check({name, v.to_string(), other.to_string(), v == other,
                                               i == 0 ? "derived_abelianization; abelianization" : "derived_abelianization; group_homology"}));
    }
    doc["results"].push_back(Json{{"group", g.label()}, {"pi", pis}});
    return doc;
}

Json cmd_dold_thom(Context& c)
{
    auto p = c.r.positional("space");
    require_one(p, "space");
    const std::size_t sym_max = c.r.get(c.f.sym_max, "sym_max", std::size_t{3});
    const std::size_t degree = c.r.get(c.f.degree, "degree", std::size_t{1});
    const std::size_t guard = c.r.size_guard(dcft::kDefaultOrbitGuard);
    if (sym_max < 1) throw dcft::InvalidInput("--sym-max must be at least 1");
    c.config["space"] = p[0];
    c.config["sym_max"] = sym_max;
    c.config["degree"] = degree;
    c.config["size_guard"] = guard;
    dcft::FiniteSimplicialSet x = parse_space(p[0], degree + 1);

    Json doc = report::document("dold-thom", c.config);
    dcft::DoldThomReport r = dcft::dold_thom_check(x, sym_max, degree, guard);
    Json values = Json::array();
    for (std::size_t n = 1; n <= r.values.size(); ++n)
        values.push_back(Json{{"n", report::tagged(Integer(static_cast<long>(n)), "input")}, {"H", report::group(r.values[n - 1], "sym_power_chains")}});
    doc["results"].push_back(Json{{"space", p[0]},
                                  {"degree", report::tagged(Integer(static_cast<long>(degree)), "input")},
                                  {"sym_powers", values},
                                  {"stabilized", r.stabilized},
                                  {"reduced_homology", report::group(r.reduced_homology, "reduced_chains")}});
    const std::string stable = r.stable_value ? r.stable_value->to_string() : "not stabilized";
    doc["checks"].push_back(report::check({"stable H_" + std::to_string(degree) + "(Sym^n X) = reduced H_" + std::to_string(degree) + "(X)",
                                           stable, r.reduced_homology.to_string(), r.matches, "dold_thom_check"}));
    return doc;
}

Json cmd_class_group(Context& c)
{
    auto p = c.r.positional("discriminants");
    if (p.empty()) throw dcft::InvalidInput("expected at least one discriminant");
    std::vector<Integer> ds;
    for (const auto& s : p) ds.push_back(discriminant(s));
    c.config["discriminants"] = int_list(ds);

    Json doc = report::document("class-group", c.config);
    for (const auto& d : ds) {
        dcft::IdealClassGroup cl = dcft::class_group(d);
        Json forms = Json::array();
        for (const auto& f : cl.forms) forms.push_back(report::form(f, "reduced_forms"));
        doc["results"].push_back(Json{{"d", report::tagged(d, "input")},
                                      {"h", report::tagged(Integer(static_cast<long>(cl.order())), "reduced_forms")},
                                      {"group", report::group(cl.group, "class_group")},
                                      {"forms", forms},
                                      {"units", report::group(dcft::unit_group(d), "unit_group")}});
        const std::string h = std::to_string(cl.order()), by_ideals = std::to_string(dcft::class_number_by_ideals(d));
        doc["checks"].push_back(report::check({"h(" + d.get_str() + ") by forms = by ideals", h, by_ideals, h == by_ideals,
                                               "reduced_forms; class_number_by_ideals"}));
        const std::string ord = cl.group.order()->get_str();
        doc["checks"].push_back(report::check({"|Cl(" + d.get_str() + ")| = number of reduced forms", ord, h, ord == h, "class_group"}));
    }
    return doc;
}

Json cmd_ray_class(Context& c)
{
    auto p = c.r.positional("d");
    require_one(p, "discriminant");
    const Integer d = discriminant(p[0]);
    const std::string modulus = c.r.get(c.f.modulus, "modulus", std::string("1"));
    const std::size_t guard = c.r.size_guard(dcft::kDefaultResidueGuard);
    dcft::ImagQuadField f(d);
    const dcft::Ideal j = parse_modulus(f, modulus);
    c.config["d"] = report::integer(d);
    c.config["modulus"] = modulus;
    c.config["size_guard"] = guard;

    Json doc = report::document("ray-class", c.config);
    dcft::RayClassGroup r = dcft::ray_class_group(f, j, guard);
    doc["results"].push_back(Json{{"d", report::tagged(d, "input")},
                                  {"modulus", report::ideal(j, "input")},
                                  {"ray_class_group", report::group(r.group, "ray_class_group")},
                                  {"residue_units", report::group(r.residues.group, "residue_units")},
                                  {"unit_image_order", report::tagged(r.unit_image_order, "ray_class_group")},
                                  {"class_group", report::group(r.class_group.group, "class_group")}});
    const Integer lhs = *r.group.order() * r.unit_image_order;
    const Integer rhs = *r.class_group.group.order() * *r.residues.group.order();
    doc["checks"].push_back(report::check({"|Cl_J| |image of units| = |Cl| |(O/J)^x|", lhs.get_str(), rhs.get_str(), lhs == rhs,
                                           "ray_class_group; class_group; residue_units"}));
    const bool onto = r.to_class_group.is_surjective();
    doc["checks"].push_back(report::check({"Cl_J -> Cl is onto", onto ? "yes" : "no", "yes", onto, "ray_class_group"}));
    return doc;
}

Json cmd_kummer(Context& c)
{
    auto p = c.r.positional("d");
    require_one(p, "discriminant");
    const Integer d = discriminant(p[0]);
    const std::vector<Integer> levels = parse_levels(c.r.get(c.f.levels, "levels", std::string("2,3,4,6,8,12")));
    c.config["d"] = report::integer(d);
    c.config["levels"] = int_list(levels);

    Json doc = report::document("kummer", c.config);
    for (const auto& n : levels) {
        dcft::KummerCohomology k = dcft::kummer_cohomology(d, n);
        doc["results"].push_back(Json{{"n", report::tagged(n, "input")},
                                      {"h0", report::group(k.h0, "kummer_cohomology")},
                                      {"units_mod_n", report::group(k.units_mod_n, "kummer_cohomology")},
                                      {"class_n_torsion", report::group(k.class_n_torsion, "kummer_cohomology")},
                                      {"h1", report::group(k.h1, "kummer_cohomology")},
                                      {"h1_extension_splits", k.extension_splits},
                                      {"h2", report::group(k.h2, "kummer_cohomology")}});
        for (const auto& ch : dcft::poitou_tate_order_check(d, n).checks) {
            dcft::Check named = ch;
            named.name += " (n=" + n.get_str() + ")";
            doc["checks"].push_back(report::check(named));
        }
    }
    doc["provenance"] = Json::array({dcft::kBrauerVanishing});
    return doc;
}

Json cmd_theorem(Context& c)
{
    auto p = c.r.positional("d");
    require_one(p, "discriminant");
    const Integer d = discriminant(p[0]);
    const std::vector<Integer> levels = parse_levels(c.r.get(c.f.levels, "levels", std::string("2,3,4,6,8,12")));
    const long pmax = c.r.get(c.f.pmax, "pmax", 10000L);
    c.config["d"] = report::integer(d);
    c.config["levels"] = int_list(levels);
    c.config["pmax"] = pmax;

    Json doc = report::document("verify-theorem", c.config);
    dcft::TheoremReport r = dcft::verify_main_theorem(d, levels, pmax);
    doc["results"].push_back(report::theorem(r));
    for (const auto& v : r.verified) doc["checks"].push_back(report::check(v));
    if (r.artin)
        doc["checks"].push_back(report::check({"splitting law", std::to_string(r.artin->agreed), std::to_string(r.artin->checked),
                                               r.artin->pass(), "artin_pi0_check"}));
    return doc;
}

Json cmd_artin(Context& c)
{
    auto p = c.r.positional("d");
    require_one(p, "discriminant");
    const Integer d = discriminant(p[0]);
    const long pmax = c.r.get(c.f.pmax, "pmax", 10000L);
    std::optional<std::vector<long>> poly;
    const std::string poly_text = c.r.get(c.f.poly, "poly", std::string());
    if (!poly_text.empty()) {
        poly.emplace();
        for (const auto& x : parse_list(poly_text)) poly->push_back(x.get_si());
    }
    const dcft::HcfEntry& e = dcft::curated_entry(d, poly);
    c.config["d"] = report::integer(d);
    c.config["pmax"] = pmax;
    c.config["poly"] = e.display;

    Json doc = report::document("artin", c.config);
    dcft::ArtinReport r = dcft::artin_pi0_check(d, e.coefficients, pmax);
    Json excluded = Json::array();
    for (long q : r.excluded) excluded.push_back(q);
    Json disagreements = Json::array();
    for (const auto& x : r.disagreements)
        disagreements.push_back(Json{{"p", x.p}, {"kind", x.kind}, {"expected_roots", x.expected_roots}, {"roots", x.roots},
                                      {"provenance", "prime_ideal_class; distinct_roots_mod_p"}});
    auto count = [](std::size_t n) { return report::tagged(Integer(static_cast<long>(n)), "artin_pi0_check"); };
    doc["results"].push_back(Json{{"d", report::tagged(d, "input")},
                                  {"polynomial", e.display},
                                  {"checked", count(r.checked)},
                                  {"agreed", count(r.agreed)},
                                  {"principal", count(r.principal)},
                                  {"non_principal", count(r.nonprincipal)},
                                  {"inert", count(r.inert)},
                                  {"excluded", report::tagged(excluded, "artin_pi0_check")},
                                  {"disagreements", disagreements}});
    doc["checks"].push_back(report::check({"agreement rate is 100%", std::to_string(r.agreed), std::to_string(r.checked), r.pass(),
                                           "artin_pi0_check; prime_ideal_class; distinct_roots_mod_p"}));
    return doc;
}

Json cmd_functoriality(Context& c)
{
    auto p = c.r.positional("pairs");
    const std::size_t maxdeg = c.r.get(c.f.max_degree, "max_degree", std::size_t{2});
    const std::size_t guard = c.r.size_guard(dcft::kDefaultSizeGuard);
    if (p.empty()) p = {"all"};
    std::vector<dcft::SubgroupPair> pairs;
    for (const auto& pc : dcft::subgroup_pair_catalog()) {
        const std::string label = pc.group.label() + ">" + pc.sub.label;
        if (std::find(p.begin(), p.end(), "all") != p.end() || std::find(p.begin(), p.end(), label) != p.end()) pairs.push_back(pc);
    }
    for (const auto& want : p) {
        if (want == "all") continue;
        bool found = false;
        for (const auto& pc : pairs) found = found || pc.group.label() + ">" + pc.sub.label == want;
        if (!found) throw dcft::InvalidInput("unknown subgroup pair '" + want + "' (use G>H from the catalog, or all)");
    }
    c.config["pairs"] = p;
    c.config["max_degree"] = maxdeg;
    c.config["size_guard"] = guard;

    Json doc = report::document("functoriality", c.config);
    dcft::NormTransferReport r = dcft::norm_transfer_report(pairs, maxdeg, guard);
    Json labels = Json::array();
    for (const auto& pc : pairs) labels.push_back(pc.group.label() + ">" + pc.sub.label);
    doc["results"].push_back(Json{{"pairs", labels}, {"out_of_scope", r.out_of_scope}});
    doc["checks"] = report::checks(r.checks);
    return doc;
}

struct SuiteTiming {
    std::vector<std::pair<int, double>> seconds;
};

Json cmd_suite(Context& c, SuiteTiming& timing)
{
    dcft::suite::Settings s;
    s.size_guard = c.r.size_guard(dcft::kDefaultSizeGuard);
    c.config["size_guard"] = s.size_guard;
    c.config["dold_kan_trials"] = s.dold_kan_trials;
    c.config["seed"] = s.seed;
    c.config["discriminants"] = s.discriminants;
    c.config["kummer_levels"] = s.kummer_levels;
    c.config["theorem_discriminants"] = s.theorem_discriminants;
    c.config["theorem_levels"] = s.theorem_levels;
    c.config["pmax"] = s.artin_p_max;

    Json doc = report::document("suite", c.config);
    for (const auto& fn : dcft::suite::criteria()) {
        const auto start = std::chrono::steady_clock::now();
        dcft::suite::Criterion crit = fn(s);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        timing.seconds.push_back({crit.id, secs});
        doc["results"].push_back(dcft::suite::to_json(crit));
        doc["checks"].push_back(report::check({"criterion " + std::to_string(crit.id) + ": " + crit.title,
                                               std::to_string(std::count_if(crit.checks.begin(), crit.checks.end(),
                                                                            [](const dcft::Check& k) { return k.pass; })),
                                               std::to_string(crit.checks.size()), crit.pass(), "suite"}));
    }
    return doc;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dcft::InvalidInput("cannot write " + path.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Derived abelianization and class field theory checks at desk scale"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config_path, "JSON config file (flags take precedence)");
    app.add_option("--out", f.out_dir, "directory for <command>.json and <command>.txt");
    app.add_flag("--json", f.json, "print the JSON report instead of the table");
    app.add_option("--size-guard", f.size_guard, std::string("cap on construction sizes (also ") + kGuardEnv + ")");

    auto positional = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        sub->add_option(name, f.positional, help);
        sub->allow_extras(false);
    };
    auto* homology = app.add_subcommand("homology", "integral homology of a finite group");
    positional(homology, "group", "catalog name or C<n>");
    homology->add_option("--max-degree", f.max_degree, "highest degree (default 3)");

    auto* derived = app.add_subcommand("derived-ab", "homotopy of the derived abelianization");
    positional(derived, "group", "catalog name or C<n>");
    derived->add_option("--max-degree", f.max_degree, "highest pi_i (default 2)");

    auto* dold = app.add_subcommand("dold-thom", "homology of symmetric powers");
    positional(dold, "space", "point, circle, sphere2 or wedge<k>");
    dold->add_option("--sym-max", f.sym_max, "largest symmetric power (default 3)");
    dold->add_option("--degree", f.degree, "homological degree (default 1)");

    auto* cg = app.add_subcommand("class-group", "class groups of imaginary quadratic fields");
    positional(cg, "discriminants", "fundamental discriminants d < 0");

    auto* ray = app.add_subcommand("ray-class", "ray class group of a modulus");
    positional(ray, "d", "fundamental discriminant d < 0");
    ray->add_option("--modulus", f.modulus, "'m' for (m) or a Hermite triple 'a,b,c' (default 1)");

    auto* kum = app.add_subcommand("kummer", "cohomology of mu_n");
    positional(kum, "d", "fundamental discriminant d < 0");
    kum->add_option("--levels", f.levels, "comma-separated levels (default 2,3,4,6,8,12)");

    auto* thm = app.add_subcommand("verify-theorem", "verified and predicted blocks for pi_0 and pi_1");
    positional(thm, "d", "fundamental discriminant d < 0");
    thm->add_option("--levels", f.levels, "levels closed under divisibility (default 2,3,4,6,8,12)");
    thm->add_option("--pmax", f.pmax, "prime bound for the splitting law (default 10000)");

    auto* art = app.add_subcommand("artin", "splitting law against a curated Hilbert class field");
    positional(art, "d", "fundamental discriminant d < 0");
    art->add_option("--pmax", f.pmax, "prime bound (default 10000)");
    art->add_option("--poly", f.poly, "coefficients from the constant term up; must match the catalog");

    auto* fun = app.add_subcommand("functoriality", "transfer checks on subgroup pairs");
    positional(fun, "pairs", "G>H labels from the catalog, or all (default)");
    fun->add_option("--max-degree", f.max_degree, "highest homological degree (default 2)");

    auto* suite = app.add_subcommand("suite", "the full acceptance battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    }

    try {
        Resolver resolver(f, load_config(f.config_path));
        Context ctx{resolver, f};
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        SuiteTiming timing;
        Json doc;
        if (sub == homology) doc = cmd_homology(ctx);
        else if (sub == derived) doc = cmd_derived(ctx);
        else if (sub == dold) doc = cmd_dold_thom(ctx);
        else if (sub == cg) doc = cmd_class_group(ctx);
        else if (sub == ray) doc = cmd_ray_class(ctx);
        else if (sub == kum) doc = cmd_kummer(ctx);
        else if (sub == thm) doc = cmd_theorem(ctx);
        else if (sub == art) doc = cmd_artin(ctx);
        else if (sub == fun) doc = cmd_functoriality(ctx);
        else if (sub == suite) doc = cmd_suite(ctx, timing);
        doc["config"] = ctx.config;
        doc["config"]["sources"] = resolver.sources();
        report::finalize(doc);

        const std::string json_text = doc.dump(2) + "\n";
        const std::string table = report::render_table(doc);
        if (!f.out_dir.empty()) {
            std::filesystem::create_directories(f.out_dir);
            write_file(std::filesystem::path(f.out_dir) / (name + ".json"), json_text);
            write_file(std::filesystem::path(f.out_dir) / (name + ".txt"), table);
            if (sub == suite) {
                Json t = Json::object();
                for (auto [id, secs] : timing.seconds) t[std::to_string(id)] = secs;
                write_file(std::filesystem::path(f.out_dir) / "suite.timing.json", t.dump(2) + "\n");
            }
        }
        std::cout << (f.json ? json_text : table);
        if (sub == suite)
            for (auto [id, secs] : timing.seconds) std::cerr << "criterion " << id << ": " << secs << " s\n";
        return doc["pass"].get<bool>() ? kPass : kAssertion;
    } catch (const dcft::SizeGuardExceeded& e) {
        std::cerr << "size guard exceeded: " << e.what() << "\n";
        return kGuard;
    } catch (const dcft::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const dcft::DegreeOutOfRange& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const dcft::ValidationError& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return kAssertion;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
}
