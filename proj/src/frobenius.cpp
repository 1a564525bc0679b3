#include "pkh/frobenius.hpp"

#include "json.hpp"

namespace pkh {

namespace {

/// One coefficient c * s^ds * t^dt.
struct Coeff {
  int c, ds, dt;
};

/// The rule table as data. Each row: inputs -> output signs with coefficient.
struct MergeRule {
  Sign p, q, out;
  Coeff k;
};
struct SplitRule {
  Sign p, first, second;
  Coeff k;
};

constexpr Sign M = Sign::Minus;
constexpr Sign P = Sign::Plus;

constexpr MergeRule kMergeRules[] = {
    {M, M, M, {1, 0, 0}},  // unit
    {P, M, P, {1, 0, 0}},
    {M, P, P, {1, 0, 0}},
    {P, P, P, {1, 1, 0}},  // X^2 = sX + t
    {P, P, M, {1, 0, 1}},
};

constexpr SplitRule kSplitRules[] = {
    {P, P, P, {1, 0, 0}},
    {P, M, M, {1, 0, 1}},
    {M, M, P, {1, 0, 0}},
    {M, P, M, {1, 0, 0}},
    {M, M, M, {-1, 1, 0}},
};

PolyST to_poly(Coeff k) { return PolyST::monomial(k.c, k.ds, k.dt); }

std::array<std::array<SignSum, 2>, 2> build_merge() {
  std::array<std::array<SignSum, 2>, 2> t{};
  for (const auto& r : kMergeRules) t[static_cast<size_t>(r.p)][static_cast<size_t>(r.q)][r.out] += to_poly(r.k);
  return t;
}

std::array<SignPairSum, 2> build_split() {
  std::array<SignPairSum, 2> t{};
  for (const auto& r : kSplitRules) t[static_cast<size_t>(r.p)].at(r.first, r.second) += to_poly(r.k);
  return t;
}

const auto& merge_table() {
  static const auto t = build_merge();
  return t;
}

const auto& split_table() {
  static const auto t = build_split();
  return t;
}

nlohmann::json coeff_json(const PolyST& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) terms.push_back({{"s", t.deg_s}, {"t", t.deg_t}, {"coeff", t.coeff.get_si()}});
  return terms;
}

}  // namespace

const SignSum& merge(Sign p, Sign q) { return merge_table()[static_cast<size_t>(p)][static_cast<size_t>(q)]; }

const SignPairSum& split(Sign p) { return split_table()[static_cast<size_t>(p)]; }

SignSum split_secondary_sign(Sign p, Sign fixed_second) {
  SignSum out;
  for (Sign first : {Sign::Minus, Sign::Plus}) out[first] = split(p).at(first, fixed_second);
  return out;
}

std::string frobenius_table_json() {
  nlohmann::json j;
  j["unit"] = "-";
  j["relation"] = "X^2 = s X + t, X = +";
  j["merge"] = nlohmann::json::array();
  for (Sign p : {M, P})
    for (Sign q : {M, P})
      for (Sign out : {M, P}) {
        const PolyST& c = merge(p, q)[out];
        if (c.is_zero()) continue;
        j["merge"].push_back({{"in", std::string{sign_char(p), sign_char(q)}},
                              {"out", std::string(1, sign_char(out))},
                              {"coeff", c.to_string()},
                              {"terms", coeff_json(c)}});
      }
  j["split"] = nlohmann::json::array();
  for (Sign p : {M, P})
    for (Sign a : {M, P})
      for (Sign b : {M, P}) {
        const PolyST& c = split(p).at(a, b);
        if (c.is_zero()) continue;
        j["split"].push_back({{"in", std::string(1, sign_char(p))},
                              {"out", std::string{sign_char(a), sign_char(b)}},
                              {"coeff", c.to_string()},
                              {"terms", coeff_json(c)}});
      }
  return j.dump(2);
}

}  // namespace pkh
