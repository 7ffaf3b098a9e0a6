#include "rittlab/jsonio.hpp"

#include "json.hpp"

#include "rittlab/parse.hpp"

namespace rittlab {
namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& j, int indent) {
    return indent < 0 ? j.dump() : j.dump(indent);
}

ordered_json chain_array(const std::vector<RatMap>& factors) {
    ordered_json a = ordered_json::array();
    for (const RatMap& f : factors) a.push_back(print_ratmap(f));
    return a;
}

ordered_json degrees_array(const std::vector<RatMap>& factors) {
    ordered_json a = ordered_json::array();
    for (const RatMap& f : factors) a.push_back(f.degree());
    return a;
}

// One decomposition record; budgetExhausted records whether the search
// that produced it was cut short, never doubt about the factors.
ordered_json decomposition_record(const Decomposition& d, bool exhausted) {
    ordered_json r;
    r["product"] = print_ratmap(d.product);
    r["split"] = degrees_array(d.factors);
    r["factors"] = chain_array(d.factors);
    r["certified"] = true;
    r["budgetExhausted"] = exhausted;
    return r;
}

ordered_json mobius_array(const Mobius& m) {
    return ordered_json::array({m.a().str(), m.b().str(), m.c().str(), m.d().str()});
}

ordered_json point_json(const ProjPoint& p) {
    if (p.exact) {
        if (p.is_infinity()) return "inf";
        return (p.x / p.y).str();
    }
    ordered_json j;
    const std::complex<double> v = p.value();
    j["re"] = v.real();
    j["im"] = v.imag();
    return j;
}

const char* fate_name(OrbitFate f) {
    switch (f) {
        case OrbitFate::Attracted: return "attracted";
        case OrbitFate::OnRepellingCycle: return "onRepellingCycle";
        default: return "undecided";
    }
}

const char* verdict_name(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Hyperbolic: return "hyperbolic";
        case StabilityVerdict::NotHyperbolic: return "notHyperbolic";
        default: return "undecided";
    }
}

} // namespace

std::string split_report_json(const RatMap& product, DegreeSplit split,
                              const SplitOutcome& out, int indent) {
    ordered_json j;
    j["product"] = print_ratmap(product);
    j["split"] = ordered_json::array({split.d1, split.d2});
    j["decompositions"] = ordered_json::array();
    for (const Decomposition& d : out.splits)
        j["decompositions"].push_back(decomposition_record(d, out.budget_exhausted));
    j["budgetExhausted"] = out.budget_exhausted;
    j["unverified"] = out.unverified;
    return dump(j, indent);
}

std::string chain_search_json(const RatMap& product, const ChainSearch& out, int indent) {
    ordered_json j;
    j["product"] = print_ratmap(product);
    j["chains"] = ordered_json::array();
    for (const Decomposition& d : out.chains)
        j["chains"].push_back(decomposition_record(d, out.budget_exhausted));
    j["budgetExhausted"] = out.budget_exhausted;
    return dump(j, indent);
}

std::string primality_json(const RatMap& r, const PrimalityReport& rep, int indent) {
    ordered_json j;
    j["map"] = print_ratmap(r);
    j["verdict"] = rep.verdict == Primality::Prime      ? "prime"
                   : rep.verdict == Primality::Composite ? "composite"
                                                         : "unknown";
    if (rep.witness) j["witness"] = decomposition_record(*rep.witness, rep.budget_exhausted);
    j["budgetExhausted"] = rep.budget_exhausted;
    return dump(j, indent);
}

std::string equivalence_json(const Decomposition& a, const Decomposition& b,
                             const EquivOutcome& out, int indent) {
    ordered_json j;
    j["products"] = ordered_json::array({print_ratmap(a.product), print_ratmap(b.product)});
    j["chains"] = ordered_json::array({chain_array(a.factors), chain_array(b.factors)});
    j["status"] = out.status == EquivStatus::Equivalent  ? "equivalent"
                  : out.status == EquivStatus::NumericOnly ? "numericOnly"
                                                           : "notEquivalent";
    if (out.witness) {
        j["witness"] = ordered_json::array();
        for (const Mobius& g : *out.witness) j["witness"].push_back(mobius_array(g));
    }
    if (out.status == EquivStatus::NumericOnly) j["residual"] = out.residual;
    return dump(j, indent);
}

std::string virtual_report_json(const RatMap& r, const VirtualReport& rep, int indent) {
    ordered_json j;
    j["map"] = print_ratmap(r);
    j["horizon"] = rep.horizon;
    j["alphaLowerBound"] = rep.alpha_lower_bound;
    j["exceptional"] = rep.exceptional;
    j["partial"] = rep.partial;
    j["findings"] = ordered_json::array();
    for (const VirtualFinding& f : rep.findings) {
        ordered_json e;
        e["level"] = f.level;
        e["factors"] = chain_array(f.decomposition.factors);
        e["status"] = f.status == FindingStatus::New     ? "new"
                      : f.status == FindingStatus::Trivial ? "trivial"
                                                           : "undecided";
        j["findings"].push_back(e);
    }
    return dump(j, indent);
}

std::string critical_points_json(const RatMap& r,
                                 const std::vector<RamificationPoint>& pts, int indent) {
    ordered_json j;
    j["map"] = print_ratmap(r);
    j["degree"] = r.degree();
    j["criticalPoints"] = ordered_json::array();
    for (const RamificationPoint& p : pts) {
        ordered_json e;
        e["point"] = point_json(p.point);
        e["index"] = p.index;
        e["value"] = point_json(p.value);
        j["criticalPoints"].push_back(e);
    }
    return dump(j, indent);
}

std::string classification_json(const RatMap& r,
                                const std::vector<RamificationPoint>& pts,
                                const OrbitClassification& cls, int indent) {
    ordered_json j;
    j["map"] = print_ratmap(r);
    j["criticalPoints"] = ordered_json::array();
    for (const RamificationPoint& p : pts) j["criticalPoints"].push_back(point_json(p.point));
    j["orbits"] = ordered_json::array();
    for (const OrbitRecord& o : cls.orbits) {
        ordered_json e;
        e["point"] = point_json(o.start);
        e["status"] = fate_name(o.fate);
        if (o.period > 0) {
            e["period"] = o.period;
            e["multiplierAbs"] = o.multiplier_modulus;
        }
        e["steps"] = o.steps;
        j["orbits"].push_back(e);
    }
    j["verdict"] = verdict_name(cls.verdict);
    return dump(j, indent);
}

std::string special_report_json(const RatMap& r, const SpecialReport& rep, int indent) {
    ordered_json j;
    j["map"] = print_ratmap(r);
    j["form"] = rep.form == SpecialForm::Power      ? "power"
                : rep.form == SpecialForm::Chebyshev ? "chebyshev"
                                                     : "none";
    if (rep.form != SpecialForm::None) {
        j["degree"] = rep.degree;
        if (rep.form == SpecialForm::Power) j["inverted"] = rep.inverted;
        if (rep.form == SpecialForm::Chebyshev) j["sign"] = rep.sign;
        if (rep.witness) j["witness"] = mobius_array(*rep.witness);
    }
    return dump(j, indent);
}

std::string conjugacy_json(const RatMap& a, const RatMap& b,
                           const ConjugacyOutcome& out, int indent) {
    ordered_json j;
    j["maps"] = ordered_json::array({print_ratmap(a), print_ratmap(b)});
    j["status"] = out.status == ConjugacyStatus::Conjugate    ? "conjugate"
                  : out.status == ConjugacyStatus::NotConjugate ? "notConjugate"
                                                                : "unknown";
    if (out.witness) j["witness"] = mobius_array(*out.witness);
    return dump(j, indent);
}

std::string homology_json(const DecGraph& g, const CWComplex& complex,
                          const HomologyResult& h, bool filled, int indent) {
    ordered_json j;
    j["vertices"] = static_cast<int>(g.vertices.size());
    j["partial"] = g.partial;
    j["filled"] = filled;
    j["cells"] = complex.cells;
    j["betti"] = h.betti;
    j["torsion"] = ordered_json::array();
    for (const auto& dim : h.torsion) {
        ordered_json t = ordered_json::array();
        for (const BigInt& v : dim) t.push_back(v.str());
        j["torsion"].push_back(t);
    }
    return dump(j, indent);
}

} // namespace rittlab
