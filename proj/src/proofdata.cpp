// Constructs every constant of the proof from its printed decimal form:
// h-set centers and frames for all four chains, integrator settings per
// covering relation, domain-check jobs, reference derivative hulls, and the
// admissible-transition list.

#include "rigor3bp/proofdata.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rigor3bp {

namespace {

// u vectors are derived from the stable ones: u = m * (-R(s)).
PlaneVec u_from_s(const PlaneVec& s, double m) {
    return {-s.x * m, s.xdot * m};
}

PlaneVec scaled(const PlaneVec& v, double m) { return {v.x * m, v.xdot * m}; }

EdgeRun run(int grid, int order, double step) {
    EdgeRun r;
    r.grid = grid;
    r.order = order;
    r.step = step;
    return r;
}

// Backward-mode settings: exit edges forward (vertical), entry edges of the
// target backward (horizontal, negative step), plus the transversality and
// anchor runs.
CheckParams backward(EdgeRun vertical, EdgeRun horizontal, int mono_order,
                     double mono_step, int mono_grid, int center_order,
                     double center_step, double t0 = 0.0) {
    CheckParams p;
    p.vertical = vertical;
    p.horizontal = horizontal;
    p.mono_order = mono_order;
    p.mono_step = mono_step;
    p.mono_grid = mono_grid;
    p.center_order = center_order;
    p.center_step = center_step;
    p.t0 = t0;
    return p;
}

CheckParams direct(EdgeRun vertical, EdgeRun horizontal) {
    CheckParams p;
    p.vertical = vertical;
    p.horizontal = horizontal;
    return p;
}

RelationSpec relation(std::string name, CoverMode mode, int crossings,
                      CheckParams params) {
    RelationSpec r;
    r.name = std::move(name);
    const auto sep = r.name.find("=>");
    if (sep == std::string::npos)
        throw std::invalid_argument("relation name needs '=>': " + r.name);
    r.source = r.name.substr(0, sep);
    r.target = r.name.substr(sep + 2);
    r.mode = mode;
    r.crossings = crossings;
    r.params = std::move(params);
    return r;
}

Interval dec(const std::string& name) { return registry_interval(name); }
double d(const std::string& name) { return registry_double(name); }

}  // namespace

const std::vector<std::pair<std::string, std::string>>& ProofData::decimal_registry() {
    static const std::vector<std::pair<std::string, std::string>> reg = {
        {"x1", "0.9208034913207400196"},
        {"x2", "1.081929486841799903"},
        {"eta1", "6e-14"},
        {"eta2", "1e-13"},
        {"evec1", "2.5733011"},
        {"evec2", "2.2817915"},
        {"alpha1", "3e-10"},
        {"alpha2", "4e-10"},
        {"h1sq.scale", "2e-7"},
        {"h2sq.u_scale", "1.2e-8"},
        {"h2sq.s_scale", "2.8e-7"},
        {"h2sq.s_scale_alt", "2.8e-8"},

        {"N0.x", "0.9522928423486199945"},
        {"N0.xdot", "1.23e-5"},
        {"N1.x", "0.921005737890425169"},
        {"N1.xdot", "0.0005205932817646883714"},
        {"N2.x", "0.957916338594066441"},
        {"N2.xdot", "0.02191497366476494527"},
        {"N3.x", "1.030069865952822683"},
        {"N3.xdot", "0.00330658676251664686"},
        {"N4.x", "0.967306682018305608"},
        {"N4.xdot", "0.003703230165036550462"},
        {"N5.x", "1.040628850444842879"},
        {"N5.xdot", "0.02317063455298806404"},
        {"N6.x", "1.081670357450509545"},
        {"N6.xdot", "0.0005918226490172379421"},
        {"N7.x", "1.046819673646057103"},
        {"N7.xdot", "2.13365065043902489e-5"},
        {"N0.s.x", "-4e-6"},
        {"N0.s.xdot", "1.45e-5"},
        {"N1.s.x", "-4.5e-7"},
        {"N1.s.xdot", "7e-6"},
        {"N2.s.x", "-1.2e-7"},
        {"N2.s.xdot", "2.92e-7"},
        {"N3.s.x", "-1.05e-7"},
        {"N3.s.xdot", "2.92e-7"},
        {"N4.s.x", "-1e-7"},
        {"N4.s.xdot", "2.9e-7"},
        {"N5.s.x", "-1.44e-7"},
        {"N5.s.xdot", "5.8e-7"},
        {"N6.s.x", "-1.625e-7"},
        {"N6.s.xdot", "3.75e-7"},
        {"N7.s.x", "-8.3e-7"},
        {"N7.s.xdot", "2.9e-6"},

        {"E0.x", "-2.08509704964865536"},
        {"E0.xdot", "0"},
        {"E1.x", "1.160261327316386816"},
        {"E1.xdot", "-0.1812035059427922688"},
        {"E2.x", "1.059527808809695232"},
        {"E2.xdot", "-0.03871458787165545984"},
        {"E3.x", "1.082284499686768768"},
        {"E3.xdot", "-0.0008090412116073312256"},
        {"E4.x", "1.046834433386131072"},
        {"E4.xdot", "-0.00002957990840481726976"},
        {"E5.x", "1.081929798158888576"},
        {"E5.xdot", "-0.0000007068412578518833152"},
        {"E0.s.x", "-1e-7"},
        {"E0.s.xdot", "3e-8"},
        {"E1.s.x", "1e-7"},
        {"E1.s.xdot", "8e-8"},
        {"E2.s.x", "-3e-7"},
        {"E2.s.xdot", "81e-8"},
        {"E3.s.x", "-1e-7"},
        {"E3.s.xdot", "23e-8"},
        {"E4.s.x", "-1e-7"},
        {"E4.s.xdot", "35e-8"},
        {"E5.s.x", "-1e-8"},
        {"E5.s.xdot", "22817915e-15"},

        {"F0.x", "-0.6160415155975000064"},
        {"F0.xdot", "0"},
        {"F1.x", "0.84668503722876047360"},
        {"F1.xdot", "0.17563753764246766080"},
        {"F2.x", "0.94793695784874987520"},
        {"F2.xdot", "0.01522141990729746432"},
        {"F3.x", "0.92067611200358768640"},
        {"F3.xdot", "0.00032764933375860776"},
        {"F4.x", "0.95228425894935162880"},
        {"F4.xdot", "0.00001048139819208300"},
        {"F0.s.x", "-1e-7"},
        {"F0.s.xdot", "25e-8"},
        {"F1.s.x", "1e-7"},
        {"F1.s.xdot", "92e-9"},
        {"F1.mult", "2.2"},
        {"F2.s.x", "-25e-9"},
        {"F2.s.xdot", "8.25e-8"},
        {"F3.s.x", "-1e-7"},
        {"F3.s.xdot", "26e-8"},
        {"F4.s.x", "-1e-7"},
        {"F4.s.xdot", "37e-8"},

        {"dp1.a.lo", "695.659"},
        {"dp1.a.hi", "696.1085"},
        {"dp1.b.lo", "270.3511"},
        {"dp1.b.hi", "270.4973"},
        {"dp1.c.lo", "1789.9112"},
        {"dp1.c.hi", "1791.46231"},
        {"dp1.d.lo", "695.61982"},
        {"dp1.d.hi", "696.12441"},
        {"dp2.a.lo", "573.3983"},
        {"dp2.a.hi", "573.835"},
        {"dp2.b.lo", "251.3098"},
        {"dp2.b.hi", "251.4675"},
        {"dp2.c.lo", "1308.1679"},
        {"dp2.c.hi", "1309.5201"},
        {"dp2.d.lo", "573.3613"},
        {"dp2.d.hi", "573.848"},

        {"loc1.l1.lo", "1391.271"},
        {"loc1.l1.hi", "1392.239"},
        {"loc1.l2.lo", "-0.482"},
        {"loc1.l2.hi", "0.485"},
        {"loc1.e1.lo", "-0.494"},
        {"loc1.e1.hi", "0.472"},
        {"loc1.e2.lo", "-0.483"},
        {"loc1.e2.hi", "0.484"},
        {"loc2.l1.lo", "1146.751"},
        {"loc2.l1.hi", "1147.69"},
        {"loc2.l2.lo", "-0.468"},
        {"loc2.l2.hi", "0.47"},
        {"loc2.e1.lo", "-0.481"},
        {"loc2.e1.hi", "0.457"},
        {"loc2.e2.lo", "-0.468"},
        {"loc2.e2.hi", "0.47"},
    };
    return reg;
}

Interval registry_interval(const std::string& name) {
    for (const auto& [key, text] : ProofData::decimal_registry())
        if (key == name) return interval_from_decimal(text);
    throw std::out_of_range("unknown registry constant: " + name);
}

double registry_double(const std::string& name) {
    for (const auto& [key, text] : ProofData::decimal_registry())
        if (key == name) return std::strtod(text.c_str(), nullptr);
    throw std::out_of_range("unknown registry constant: " + name);
}

ProofData::ProofData(const ProofOptions& opt) : system(SystemParams::oterma()) {
    x1 = dec("x1");
    x2 = dec("x2");
    eta1 = d("eta1");
    eta2 = d("eta2");

    u1 = {1.0, d("evec1")};
    s1 = {-1.0, d("evec1")};
    u2 = {1.0, d("evec2")};
    s2 = {-1.0, d("evec2")};
    alpha1 = d("alpha1");
    alpha2 = d("alpha2");
    h2_stable_scale = opt.h2_stable_scale;

    const Interval zero(0.0);

    // The two large sets at the periodic orbits share the orbit abscissa as
    // center; their frames are scaled eigendirection approximations.
    sets["H1^2"] = HSet{x1, zero, scaled(u1, d("h1sq.scale")),
                        scaled(s1, d("h1sq.scale")), Branch::Plus};
    sets["H2^2"] = HSet{x2, zero, scaled(u2, d("h2sq.u_scale")),
                        scaled(s2, h2_stable_scale), Branch::Minus};

    // Families of small sets centered anywhere in the isolation segment.
    families["H~1"] = FuzzyHSet{HSet{x1 + Interval(-eta1, eta1), zero,
                                     scaled(u1, alpha1), scaled(s1, alpha1),
                                     Branch::Plus}};
    families["H~2"] = FuzzyHSet{HSet{x2 + Interval(-eta2, eta2), zero,
                                     scaled(u2, alpha2), scaled(s2, alpha2),
                                     Branch::Minus}};

    // Chain sets: center, stable vector, and the multiplier giving the
    // unstable vector as m * (-R(s)).  Branches alternate along each chain
    // because every half map flips the return branch.
    struct ChainEntry {
        const char* name;
        double mult;
        Branch branch;
        double s_xdot_div = 1.0;  // divisor for a non-terminating decimal
    };
    const ChainEntry n_chain[] = {
        {"N0", 1.0 / 10.0, Branch::Minus},
        {"N1", 1.0 / 10.0, Branch::Plus, 6.0},
        {"N2", 1.0, Branch::Minus},
        {"N3", 1.0, Branch::Plus},
        {"N4", 1.0 / 2.0, Branch::Minus},
        {"N5", 1.0 / 6.0, Branch::Plus},
        {"N6", 1.0 / 2.0, Branch::Minus},
        {"N7", 1.0 / 5.0, Branch::Plus},
    };
    const ChainEntry e_chain[] = {
        {"E0", 1.0, Branch::Plus},
        {"E1", 4.0, Branch::Minus},
        {"E2", 1.0 / 10.0, Branch::Plus},
        {"E3", 1.0 / 4.0, Branch::Minus},
        {"E4", 1.0 / 4.0, Branch::Plus},
        {"E5", 1.0 / 2.0, Branch::Minus},
    };
    const ChainEntry f_chain[] = {
        {"F0", 1.0, Branch::Minus},
        {"F1", d("F1.mult"), Branch::Plus},
        {"F2", 1.0 / 5.0, Branch::Minus},
        {"F3", 1.0 / 6.0, Branch::Plus},
        {"F4", 1.0 / 6.0, Branch::Minus},
    };
    auto add_chain = [&](const ChainEntry* first, const ChainEntry* last) {
        for (const ChainEntry* c = first; c != last; ++c) {
            const std::string n = c->name;
            PlaneVec s{d(n + ".s.x"), d(n + ".s.xdot") / c->s_xdot_div};
            sets[n] = HSet{dec(n + ".x"), dec(n + ".xdot"), u_from_s(s, c->mult),
                           s, c->branch};
        }
    };
    add_chain(std::begin(n_chain), std::end(n_chain));
    add_chain(std::begin(e_chain), std::end(e_chain));
    add_chain(std::begin(f_chain), std::end(f_chain));

    lyapunov_runs = {
        {"L1", Branch::Plus, 20, 0.05},
        {"L2", Branch::Minus, 19, 0.055},
    };

    auto ref2x2 = [&](const std::string& p, const char* r00, const char* r01,
                      const char* r10, const char* r11) {
        IMatrix m(2, 2);
        auto ent = [&](const char* stem) {
            return Interval(dec(p + stem + ".lo").lo, dec(p + stem + ".hi").hi);
        };
        m.at(0, 0) = ent(r00);
        m.at(0, 1) = ent(r01);
        m.at(1, 0) = ent(r10);
        m.at(1, 1) = ent(r11);
        return m;
    };
    dp_raw_ref1 = ref2x2("dp1", ".a", ".b", ".c", ".d");
    dp_raw_ref2 = ref2x2("dp2", ".a", ".b", ".c", ".d");
    dp_local_ref1 = ref2x2("loc1", ".l1", ".e1", ".e2", ".l2");
    dp_local_ref2 = ref2x2("loc2", ".l1", ".e1", ".e2", ".l2");

    auto domain = [&](const char* set_name, int crossings, double step) {
        DomainCheckSpec ds;
        ds.set = set_name;
        ds.crossings = crossings;
        ds.order = 5;
        ds.step = step;
        ds.grid = 1;
        domain_checks.push_back(ds);
    };
    domain("H~1", 2, 0.01);
    domain("H1^2", 1, 0.01);
    for (const auto& c : n_chain) domain(c.name, 1, 0.01);
    domain("H2^2", 2, 0.01);
    for (const auto& c : e_chain) domain(c.name, c.name == std::string("E5") ? 2 : 1, 0.02);
    for (const auto& c : f_chain) domain(c.name, 1, 0.02);
    domain("H1^2", 2, 0.02);

    heteroclinic = {
        relation("H1^2=>N0", CoverMode::Direct, 1,
                 direct(run(7, 5, 0.01), run(6, 4, 0.01))),
        relation("N0=>N1", CoverMode::Backward, 1,
                 backward(run(40, 8, 0.04), run(1, 5, -0.01), 4, 0.01, 1, 6, 0.01)),
        relation("N1=>N2", CoverMode::Backward, 1,
                 backward(run(25, 5, 0.01), run(8, 6, -0.01), 4, 0.01, 1, 6, 0.01)),
        relation("N2=>N3", CoverMode::Backward, 1,
                 backward(run(5, 6, 0.004), run(6, 6, -0.004), 4, 0.004, 4, 6, 0.004)),
        relation("N3=>N4", CoverMode::Backward, 1,
                 backward(run(5, 6, 0.004), run(3, 6, -0.005), 4, 0.003, 2, 6, 0.003)),
        relation("N4=>N5", CoverMode::Backward, 1,
                 backward(run(15, 6, 0.006), run(2, 6, -0.01), 4, 0.004, 1, 6, 0.004)),
        relation("N5=>N6", CoverMode::Backward, 1,
                 backward(run(32, 6, 0.01), run(2, 6, -0.01), 4, 0.01, 1, 6, 0.01)),
        relation("N6=>N7", CoverMode::Direct, 1,
                 direct(run(5, 6, 0.01), run(8, 6, 0.01))),
        relation("N7=>H2^2", CoverMode::Backward, 1,
                 backward(run(33, 5, 0.01), run(2, 5, -0.01), 4, 0.01, 1, 6, 0.01,
                          0.228)),
    };

    exterior = {
        relation("E0=>E1", CoverMode::Backward, 1,
                 backward(run(12, 7, 0.04), run(33, 7, -0.04), 4, 0.02, 1, 7, 0.02)),
        relation("E1=>E2", CoverMode::Backward, 1,
                 backward(run(25, 7, 0.02), run(12, 8, -0.02), 4, 0.02, 1, 7, 0.02)),
        relation("E2=>E3", CoverMode::Backward, 1,
                 backward(run(50, 7, 0.03), run(1, 7, -0.02), 4, 0.02, 1, 7, 0.02)),
        relation("E3=>E4", CoverMode::Backward, 1,
                 backward(run(7, 7, 0.03), run(2, 7, -0.02), 4, 0.02, 1, 7, 0.02)),
        relation("E4=>E5", CoverMode::Backward, 1,
                 backward(run(20, 7, 0.03), run(2, 7, -0.02), 4, 0.02, 1, 7, 0.02)),
        relation("E5=>H2^2", CoverMode::Backward, 2,
                 backward(run(4, 5, 0.01), run(1, 5, -0.02), 5, 0.02, 1, 8, 0.02,
                          -0.155)),
    };

    interior = {
        relation("F0=>F1", CoverMode::Backward, 1,
                 backward(run(20, 8, 0.02), run(50, 6, -0.01), 5, 0.01, 2, 8, 0.02)),
        relation("F1=>F2", CoverMode::Backward, 1,
                 backward(run(330, 7, 0.02), run(9, 7, -0.02), 4, 0.01, 1, 8, 0.02)),
        relation("F2=>F3", CoverMode::Backward, 1,
                 backward(run(35, 7, 0.03), run(1, 7, -0.02), 4, 0.01, 1, 8, 0.02)),
        relation("F3=>F4", CoverMode::Backward, 1,
                 backward(run(10, 7, 0.03), run(1, 7, -0.02), 4, 0.01, 1, 8, 0.02)),
        relation("F4=>H1^2", CoverMode::Backward, 1,
                 backward(run(45, 7, 0.03), run(3, 7, -0.02), 4, 0.01, 1, 8, 0.02)),
        relation("H1^2=>H~1", CoverMode::Backward, 2,
                 backward(run(7, 7, 0.03), run(3, 8, -0.02), 4, 0.01, 1, 7, 0.03)),
    };

    hyperbolic = {
        relation("H~1=>H~1", CoverMode::Backward, 2,
                 backward(run(3, 6, 0.01), run(2, 6, -0.01), 4, 0.01, 1, 6, 0.01)),
        relation("H~1=>H1^2", CoverMode::Backward, 2,
                 backward(run(3, 6, 0.01), run(2, 5, -0.01), 4, 0.01, 1, 6, 0.01)),
        relation("H2^2=>H~2", CoverMode::Backward, 2,
                 backward(run(32, 5, 0.01), run(4, 8, -0.02), 4, 0.01, 1, 5, 0.01)),
        relation("H~2=>H~2", CoverMode::Backward, 2,
                 backward(run(2, 8, 0.02), run(4, 8, -0.02), 4, 0.01, 1, 8, 0.02)),
    };
    hyperbolic[0].a1_from_derivative_hull = true;
    hyperbolic[1].a1_from_derivative_hull = true;
    hyperbolic[3].a1_from_derivative_hull = true;
    // Entry edges of the self-covering at the second orbit are checked once
    // against the enclosing large set; containment of the family support in
    // that set is certified separately.
    hyperbolic[3].params.a3_exclusion = sets["H2^2"];
    hyperbolic[3].note = "entry disjointness delegated to the enclosing set";

    // Relations landing at (or leaving) a Lyapunov fixed point take the
    // fixed-point enclosure as the anchor: the point maps to itself, so the
    // anchor condition needs containment only.  Existence of the fixed point
    // inside the box follows from the Lyapunov and return-map lemmas.
    const PlaneBox anchor1{x1 + Interval(-1.0, 1.0) * eta1, Interval(0.0)};
    const PlaneBox anchor2{x2 + Interval(-1.0, 1.0) * eta2, Interval(0.0)};
    const std::string anchor_note = "anchor at the enclosed fixed point";
    for (RelationSpec* r : {&hyperbolic[0], &hyperbolic[1], &interior.back()}) {
        r->params.a2_fixed_anchor = anchor1;
        r->note = r->note.empty() ? anchor_note : r->note + "; " + anchor_note;
    }
    for (RelationSpec* r : {&hyperbolic[2], &hyperbolic[3]}) {
        r->params.a2_fixed_anchor = anchor2;
        r->note = r->note.empty() ? anchor_note : r->note + "; " + anchor_note;
    }

    transition_edges = {
        {1, 1, "P+", {"lyapunov", "dp", "hyperbolic"}, false},
        {1, 2, "P- o P1/2+ o (P1/2- o P1/2+)^4 o P+",
         {"lyapunov", "dp", "hyperbolic", "heteroclinic"}, false},
        {1, 4, "P1/2+ o (P1/2- o P1/2+)^2 o P+",
         {"lyapunov", "dp", "hyperbolic", "interior"}, true},
        {2, 1, "P+ o P1/2- o (P1/2+ o P1/2-)^4 o P-",
         {"lyapunov", "dp", "hyperbolic", "heteroclinic"}, true},
        {2, 2, "P-", {"lyapunov", "dp", "hyperbolic"}, false},
        {2, 3, "P1/2- o (P1/2+ o P1/2-)^2 o P-^2",
         {"lyapunov", "dp", "hyperbolic", "exterior"}, true},
        {3, 2, "P-^2 o P1/2+ o (P1/2- o P1/2+)^2",
         {"lyapunov", "dp", "hyperbolic", "exterior"}, false},
        {4, 1, "P+ o P1/2- o (P1/2+ o P1/2-)^2",
         {"lyapunov", "dp", "hyperbolic", "interior"}, false},
    };
}

const HSet& ProofData::set(const std::string& name) const {
    const auto it = sets.find(name);
    if (it == sets.end()) throw std::out_of_range("unknown h-set: " + name);
    return it->second;
}

const FuzzyHSet& ProofData::family(const std::string& name) const {
    const auto it = families.find(name);
    if (it == families.end()) throw std::out_of_range("unknown family: " + name);
    return it->second;
}

bool ProofData::is_family(const std::string& name) const {
    return families.count(name) != 0;
}

PlaneBox ProofData::support(const std::string& name) const {
    return support_box(is_family(name) ? family(name).family : set(name));
}

Branch ProofData::branch_of(const std::string& name) const {
    return is_family(name) ? family(name).family.branch : set(name).branch;
}

RelationSpec* ProofData::find_relation(const std::string& name) {
    for (auto* list : {&heteroclinic, &exterior, &interior, &hyperbolic})
        for (auto& r : *list)
            if (r.name == name) return &r;
    return nullptr;
}

std::vector<const RelationSpec*> ProofData::all_relations() const {
    std::vector<const RelationSpec*> out;
    for (const auto* list : {&heteroclinic, &exterior, &interior, &hyperbolic})
        for (const auto& r : *list) out.push_back(&r);
    return out;
}

const char* ProofData::symbol_name(int symbol) {
    switch (symbol) {
        case 1: return "L1";
        case 2: return "L2";
        case 3: return "X";
        case 4: return "S";
        default: throw std::out_of_range("symbol out of range");
    }
}

}  // namespace rigor3bp
