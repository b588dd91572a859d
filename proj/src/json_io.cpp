#include "virblocks/json_io.hpp"

#include <sstream>

namespace virblocks {

namespace {

json rat_json(const Rat& q) { return rat_string(q); }

json boundary_json(const std::map<Mask, Rat>& boundary)
{
    json b = json::object();
    for (const auto& [key, c] : boundary)
        b[mask_to_string(key)] = rat_json(c);
    return b;
}

Mask mask_from_string(const std::string& s, int n)
{
    Mask m = 0;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        const int p = std::stoi(tok);
        if (p < 1 || p > n)
            throw std::invalid_argument("boundary key out of range: " + s);
        m |= mask_of_point(p);
    }
    return m;
}

std::string labels_string(const std::vector<int>& labels)
{
    std::string s;
    for (size_t i = 0; i < labels.size(); ++i)
        s += (i ? "," : "") + std::to_string(labels[i]);
    return s;
}

} // namespace

json to_json(const Divisor0& d)
{
    json j;
    j["n"] = d.n();
    j["psi"] = json::array();
    for (int i = 1; i <= d.n(); ++i)
        j["psi"].push_back(rat_json(d.psi(i)));
    j["boundary"] = boundary_json(d.boundary());
    return j;
}

json to_json(const Divisor1& d)
{
    json j;
    j["n"] = d.n();
    j["lambda"] = rat_json(d.lambda);
    j["delta_irr"] = rat_json(d.delta_irr);
    j["psi"] = json::array();
    for (int i = 1; i <= d.n(); ++i)
        j["psi"].push_back(rat_json(d.psi(i)));
    j["boundary"] = boundary_json(d.boundary());
    return j;
}

Divisor0 divisor0_from_json(const json& j)
{
    const int n = j.at("n").get<int>();
    Divisor0 d(n);
    const auto& psi = j.at("psi");
    for (int i = 1; i <= n; ++i)
        d.set_psi(i, parse_rat(psi.at(static_cast<size_t>(i - 1)).get<std::string>()));
    for (const auto& [key, val] : j.at("boundary").items())
        d.add_boundary(mask_from_string(key, n), parse_rat(val.get<std::string>()));
    return d;
}

Divisor1 divisor1_from_json(const json& j)
{
    const int n = j.at("n").get<int>();
    Divisor1 d(n);
    d.lambda = parse_rat(j.at("lambda").get<std::string>());
    d.delta_irr = parse_rat(j.at("delta_irr").get<std::string>());
    const auto& psi = j.at("psi");
    for (int i = 1; i <= n; ++i)
        d.set_psi(i, parse_rat(psi.at(static_cast<size_t>(i - 1)).get<std::string>()));
    for (const auto& [key, val] : j.at("boundary").items())
        d.add_boundary(mask_from_string(key, n), parse_rat(val.get<std::string>()));
    return d;
}

json to_json(const FCurve& f)
{
    json j;
    j["n"] = f.n;
    j["g"] = f.g;
    if (f.elliptic_tail) {
        j["kind"] = "elliptic_tail";
        return j;
    }
    j["kind"] = "spine";
    j["clusters"] = json::array();
    for (const auto& c : f.clusters) {
        json cj;
        cj["genus"] = c.genus;
        cj["legs"] = c.legs;
        cj["points"] = mask_to_string(c.points);
        j["clusters"].push_back(cj);
    }
    return j;
}

namespace {

const char* effectivity_name(Effectivity e)
{
    switch (e) {
    case Effectivity::NotAttempted: return "NotAttempted";
    case Effectivity::AllStandardNegative: return "AllStandardNegative";
    case Effectivity::LpInteriorFeasible: return "LpInteriorFeasible";
    case Effectivity::LpFeasible: return "LpFeasible";
    case Effectivity::Infeasible: return "Infeasible";
    case Effectivity::SkippedScale: return "SkippedScale";
    }
    return "?";
}

} // namespace

json to_json(const EffectivityResult& e)
{
    json j;
    j["status"] = effectivity_name(e.status);
    j["t"] = rat_json(e.lp_t);
    j["fingerprint_checked"] = e.fingerprint_checked;
    if (!e.note.empty())
        j["note"] = e.note;
    json coeffs = json::object();
    for (const auto& [key, c] : e.coefficients)
        coeffs[mask_to_string(key)] = rat_json(c);
    j["coefficients"] = coeffs;
    return j;
}

json to_json(const PositivityReport& r)
{
    json j;
    j["class_id"] = r.class_id;
    j["genus"] = r.genus;
    j["rank"] = r.rank.get_str();
    j["fnef"] = r.fnef;
    j["fample"] = r.fample;
    j["zero_class"] = r.zero_class;
    if (r.witness) {
        j["witness"] = to_json(*r.witness);
        j["witness_value"] = rat_json(r.witness_value);
    }
    if (r.effectivity.status != Effectivity::NotAttempted)
        j["effectivity"] = to_json(r.effectivity);
    return j;
}

json to_json(const GenvireffRecord& r, int k)
{
    json j;
    j["k"] = k;
    j["labels"] = r.labels;
    j["method"] = r.method;
    j["status"] = r.status;
    j["t"] = rat_json(r.lp_t);
    return j;
}

json to_json(const GenvireffReport& r)
{
    json j;
    j["k"] = r.k;
    j["n_range"] = {r.n_lo, r.n_hi};
    j["degree_law_verified"] = r.degree_law_verified;
    j["tuples"] = r.tuples;
    j["zero_tuples"] = r.zero_tuples;
    j["standard_tuples"] = r.standard_tuples;
    j["lp_tuples"] = r.lp_tuples;
    j["all_certified"] = r.all_certified;
    j["exceptions"] = json::array();
    for (const auto& e : r.exceptions)
        j["exceptions"].push_back(to_json(e, r.k));
    return j;
}

json to_json(const StabilizationReport& r)
{
    json j;
    j["tuple"] = r.tuple.a;
    j["parity"] = r.parity;
    j["critical_level"] = r.level;
    j["k_range"] = {r.k_lo, r.k_hi};
    j["agree"] = r.agree;
    j["k_first_stable"] = r.k_first_stable;
    j["zero"] = r.zero;
    return j;
}

json to_json(const DifferenceReport& r)
{
    json j;
    j["tuple"] = r.tuple.a;
    j["k"] = r.k;
    j["fnef"] = r.fnef;
    j["zero"] = r.zero;
    if (r.witness) {
        j["witness"] = to_json(*r.witness);
        j["witness_value"] = rat_json(r.witness_value);
    }
    return j;
}

json to_json(const SteffCertificate& c)
{
    json j;
    j["k"] = c.k;
    j["zero"] = c.zero;
    j["all_positive"] = c.all_positive;
    j["scale_checked"] = c.scale_checked;
    j["cyclic_identity_zero"] = c.cyclic_identity_zero;
    j["fingerprint_checked"] = c.fingerprint_checked;
    json coeffs = json::object();
    for (const auto& [key, v] : c.coefficients)
        coeffs[mask_to_string(key)] = rat_json(v);
    j["coefficients"] = coeffs;
    return j;
}

json to_json(const NefCertificate& c)
{
    json j;
    j["complete"] = c.complete;
    j["nodes"] = json::array();
    for (const auto& node : c.nodes) {
        json nj;
        nj["labels"] = node.labels;
        switch (node.kind) {
        case NefCertificate::Kind::ZeroClass: nj["kind"] = "zero"; break;
        case NefCertificate::Kind::SmallN: nj["kind"] = "fnef_small_n"; break;
        case NefCertificate::Kind::Effective: nj["kind"] = "effective"; break;
        case NefCertificate::Kind::Failed: nj["kind"] = "failed"; break;
        }
        if (node.kind == NefCertificate::Kind::Effective)
            nj["effectivity"] = to_json(node.eff);
        nj["children"] = node.children;
        if (!node.note.empty())
            nj["note"] = node.note;
        j["nodes"].push_back(nj);
    }
    return j;
}

json to_json(const AxiomReport& r)
{
    json j;
    j["system"] = r.system;
    j["n_max"] = r.n_max;
    j["multiplication"] = r.multiplication;
    j["dual"] = r.dual_ok;
    j["propagation"] = r.propagation;
    j["factorization"] = r.factorization;
    j["genfact"] = r.genfact;
    j["all"] = r.all();
    if (!r.first_failure.empty())
        j["first_failure"] = r.first_failure;
    return j;
}

json to_json(const DnpReport& r)
{
    json j;
    j["p"] = rat_json(r.p);
    j["n"] = r.n;
    j["fnef"] = r.fnef;
    j["fample"] = r.fample;
    j["factorized_matches_pairing"] = r.factorized_matches_pairing;
    j["coefficient_domination"] = r.coefficient_domination;
    j["standard_form_nonnegative"] = r.standard_form_nonnegative;
    return j;
}

json to_json(const ContractionKernelReport& r)
{
    json j;
    j["n"] = r.n;
    j["i"] = r.i;
    j["j"] = r.j;
    j["dims_ok"] = r.dims_ok;
    j["pullback_span_dim"] = r.pullback_span_dim;
    j["curve_span_dim"] = r.curve_span_dim;
    j["annihilator_match"] = r.annihilator_match;
    j["sequence_exact"] = r.sequence_exact;
    return j;
}

json to_json(const PsiCharacterizationReport& r)
{
    json j;
    j["n"] = r.n;
    j["restriction_kernel_dim"] = r.restriction_kernel_dim;
    j["dim_is_two"] = r.dim_is_two;
    j["cut_to_psi_line"] = r.cut_to_psi_line;
    j["delta_full_pairs_one"] = r.delta_full_pairs_one;
    return j;
}

json matrix_to_json(const Matrix& m)
{
    json j = json::array();
    for (const auto& row : m) {
        json rj = json::array();
        for (const auto& v : row)
            rj.push_back(rat_json(v));
        j.push_back(rj);
    }
    return j;
}

std::string stabilization_csv_header()
{
    return "# virblocks stabilization v1\ntuple,parity,l,k_first_stable,zero";
}

std::string stabilization_csv_row(const StabilizationReport& r)
{
    std::ostringstream os;
    os << '"' << labels_string(r.tuple.a) << "\"," << r.parity << ',' << r.level << ','
       << r.k_first_stable << ',' << (r.zero ? 1 : 0);
    return os.str();
}

} // namespace virblocks
