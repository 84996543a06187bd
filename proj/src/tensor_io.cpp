#include "sympten/tensor_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sympten {

namespace {

using nlohmann::json;

template <class S>
json tensor_json(const Tensor<S>& t) {
  json out;
  out["n"] = t.space().n();
  out["order"] = t.order();
  out["signature"] = {t.signature().p, t.signature().q};
  json entries = json::array();
  const int m = t.dim();
  std::vector<int> idx(static_cast<std::size_t>(t.order()));
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (Scalar<S>::is_zero(t[f])) continue;
    unflatten(f, m, t.order(), idx.data());
    json e;
    json ij = json::array();
    for (int v : idx) ij.push_back(v + 1);
    e["idx"] = ij;
    e["val"] = Scalar<S>::to_string(t[f]);
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

template <class S>
Tensor<S> tensor_from(const json& j) {
  if (!j.contains("n") || !j.contains("order"))
    throw std::invalid_argument("tensor JSON: 'n' and 'order' are required");
  const int n = j.at("n").get<int>();
  const int order = j.at("order").get<int>();
  if (n < 1 || n > 6) throw std::invalid_argument("tensor JSON: n out of the supported range");
  Signature sig{};
  if (j.contains("signature") && !j.at("signature").is_null()) {
    const auto& s = j.at("signature");
    if (s.is_string() && s.get<std::string>() == "none") {
      sig = {};
    } else {
      sig = {s.at(0).get<int>(), s.at(1).get<int>()};
      if (!sig.is_none() && sig.p + sig.q != order)
        throw std::invalid_argument("tensor JSON: signature does not match order");
    }
  }
  SympSpace space(n);
  Tensor<S> t(space, order, sig);
  if (j.contains("entries")) {
    for (const auto& e : j.at("entries")) {
      const auto& ij = e.at("idx");
      if (static_cast<int>(ij.size()) != order)
        throw std::invalid_argument("tensor JSON: idx arity mismatch");
      std::vector<int> idx;
      for (const auto& v : ij) {
        int one_based = v.get<int>();
        if (one_based < 1 || one_based > space.dim())
          throw std::invalid_argument("tensor JSON: index out of range");
        idx.push_back(one_based - 1);
      }
      const auto& val = e.at("val");
      S parsed = val.is_string() ? Scalar<S>::from_string(val.get<std::string>())
                                 : Scalar<S>::from_int(val.get<long>());
      t.at(std::span<const int>(idx.data(), idx.size())) += parsed;
    }
  }
  if (!sig.is_none() && !t.signature_holds())
    throw std::invalid_argument("tensor JSON: entries violate the declared signature");
  return t;
}

}  // namespace

template <class S>
Tensor<S> tensor_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("tensor JSON: parse failure: ") + e.what());
  }
  return tensor_from<S>(j);
}

template <class S>
std::string tensor_to_json(const Tensor<S>& t, int indent) {
  return tensor_json(t).dump(indent);
}

template <class S>
Tensor<S> load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tensor file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tensor_from_json<S>(ss.str());
}

template <class S>
std::string decomposition_to_json(const TorsionDecomposition<S>& d, int indent) {
  json out;
  auto part = [&](const char* name, const Tensor<S>& t) {
    json p = tensor_json(t);
    p["max_norm"] = Scalar<S>::to_double(t.max_abs());
    p["quadratic_invariant"] =
        Scalar<S>::to_double(eval_trace(t, named_pairing(2)));
    out[name] = std::move(p);
  };
  part("part_Aprime", d.part_Aprime);
  part("part_vec_sym", d.part_vec_sym);
  part("part_Tprime", d.part_Tprime);
  part("part_vec_form", d.part_vec_form);
  out["residual"] = Scalar<S>::to_double(d.recombination_residual);
  out["residual_exact_zero"] = Scalar<S>::is_zero(d.recombination_residual);
  return out.dump(indent);
}

std::string exactness_report_to_json(const ExactnessReport& rep, int indent) {
  json out;
  out["l"] = rep.l;
  out["n"] = rep.n;
  json stages = json::array();
  for (const auto& st : rep.stages) {
    json s;
    s["p"] = st.slot.p;
    s["q"] = st.slot.q;
    s["dim"] = st.dim;
    stages.push_back(std::move(s));
  }
  out["stages"] = std::move(stages);
  out["ranks"] = rep.ranks;
  out["left_injective"] = rep.left_injective;
  out["right_surjective"] = rep.right_surjective;
  out["interior_exact"] = rep.interior_exact;
  out["pass"] = rep.pass;
  return out.dump(indent);
}

std::string classification_report_to_json(const ClassificationReport& rep, int indent) {
  json out;
  out["n"] = rep.n;
  out["span_rank"] = rep.span_rank;
  out["pass"] = rep.pass;
  json rows = json::array();
  for (const auto& mc : rep.matchings) {
    json r;
    json pairs = json::array();
    for (const auto& [a, b] : mc.pairing.pairs) pairs.push_back({a + 1, b + 1});
    r["pairs"] = std::move(pairs);
    if (mc.pairing.canonical_name) r["name"] = *mc.pairing.canonical_name;
    if (mc.in_named_basis) {
      json coeff = json::array();
      for (const auto& c : *mc.in_named_basis) coeff.push_back(rational_to_string(c));
      r["in_named_basis"] = std::move(coeff);
    }
    if (mc.multiple_of_r1) r["multiple_of_r1"] = rational_to_string(*mc.multiple_of_r1);
    rows.push_back(std::move(r));
  }
  out["matchings"] = std::move(rows);
  return out.dump(indent);
}

template Tensor<double> tensor_from_json<double>(const std::string&);
template Tensor<Rational> tensor_from_json<Rational>(const std::string&);
template std::string tensor_to_json<double>(const Tensor<double>&, int);
template std::string tensor_to_json<Rational>(const Tensor<Rational>&, int);
template Tensor<double> load_tensor_file<double>(const std::string&);
template Tensor<Rational> load_tensor_file<Rational>(const std::string&);
template std::string decomposition_to_json<double>(const TorsionDecomposition<double>&, int);
template std::string decomposition_to_json<Rational>(const TorsionDecomposition<Rational>&, int);

}  // namespace sympten
