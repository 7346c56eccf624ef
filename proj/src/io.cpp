#include "magball/io.hpp"

#include <limits>

namespace magball::io {

namespace {

IntVector int_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array");
  IntVector out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw DomainError(std::string(what) + " entries must be integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

std::int64_t int_field(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer()) throw DomainError(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw DomainError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw DomainError(std::string("missing key \"") + key + "\"");
  return *it;
}

Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return to_string(v);
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw DomainError("malformed integer string \"" + s + "\"");
    return BigInt(s);
  }
  throw DomainError("expected an integer or a decimal string");
}

Json to_json(const GroupSpec& g) { return g.moduli(); }

GroupSpec group_from_json(const Json& j) { return GroupSpec(int_vector(j, "group")); }

Json to_json(const GroupElement& e) { return e.residues; }

Json to_json(const FieldSpec& f) {
  return Json{{"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus()}};
}

FieldSpec field_from_json(const Json& j) {
  const auto p = int_field(j, "p");
  const auto m = int_field(j, "m");
  auto modulus = int_vector(require(j, "modulus"), "modulus");
  if (static_cast<std::int64_t>(modulus.size()) != m + 1) throw DomainError("modulus length must be m + 1");
  if (p < 2 || p > std::numeric_limits<std::uint32_t>::max()) throw DomainError("p out of range");
  return FieldSpec(static_cast<std::uint32_t>(p), std::move(modulus));
}

Json to_json(const BallSpec& b) {
  return Json{{"n", b.n}, {"t", b.t}, {"kplus", b.kplus}, {"kminus", b.kminus}};
}

BallSpec ball_from_json(const Json& j) {
  BallSpec b{static_cast<int>(int_field(j, "n")), static_cast<int>(int_field(j, "t")), int_field(j, "kplus"),
             int_field(j, "kminus")};
  b.validate();
  return b;
}

Json to_json(const SplitterSet& s) {
  Json elems = Json::array();
  for (const auto& e : s.elements()) elems.push_back(to_json(e));
  return Json{{"group", to_json(s.group())},
              {"elements", elems},
              {"kplus", s.magnitudes().kplus},
              {"kminus", s.magnitudes().kminus},
              {"t", s.t()}};
}

SplitterSet splitter_from_json(const Json& j) {
  auto g = group_from_json(require(j, "group"));
  const auto& raw = require(j, "elements");
  if (!raw.is_array()) throw DomainError("\"elements\" must be an array");
  std::vector<GroupElement> elems;
  for (const auto& e : raw) {
    auto r = int_vector(e, "element");
    GroupElement ge{r};
    if (!g.contains(ge)) throw DomainError("splitter element is not a reduced element of the group");
    elems.push_back(std::move(ge));
  }
  return SplitterSet(std::move(g), std::move(elems), MagnitudeSet{int_field(j, "kplus"), int_field(j, "kminus")},
                     static_cast<int>(int_field(j, "t")));
}

Json to_json(const SplitReport& r) {
  Json out{{"verdict", r.verified() ? "verified" : "refuted"}, {"image_size", r.image_size}};
  if (r.witness) {
    const auto& w = *r.witness;
    const char* kind = w.kind == SplitWitness::Kind::zero_image  ? "zero_image"
                       : w.kind == SplitWitness::Kind::collision ? "collision"
                                                                 : "uncovered";
    Json wj{{"kind", kind}, {"element", to_json(w.element)}};
    if (!w.first.empty()) wj["first"] = w.first;
    if (!w.second.empty()) wj["second"] = w.second;
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  if (r.lambda) out["lambda"] = *r.lambda;
  if (!r.histogram.empty()) {
    Json h = Json::array();
    for (auto [mult, count] : r.histogram) h.push_back({mult, count});
    out["histogram"] = h;
  }
  return out;
}

Json to_json(const GeometricReport& r) {
  Json out{{"verdict", r.verified() ? "verified" : "refuted"}, {"cosets_hit", r.cosets_hit}};
  out["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
  if (r.lambda) out["lambda"] = *r.lambda;
  return out;
}

Json to_json(const LatticeBasis& l) {
  Json rows = Json::array();
  for (const auto& row : l.rows()) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(to_json(v));
    rows.push_back(jr);
  }
  Json out{{"n", l.n()}, {"rows", rows}, {"volume", to_string(l.volume())}};
  if (!l.source().empty()) out["source"] = l.source();
  return out;
}

LatticeBasis lattice_from_json(const Json& j) {
  const auto n = int_field(j, "n");
  const auto& rows = require(j, "rows");
  if (!rows.is_array()) throw DomainError("\"rows\" must be an array");
  IntMatrix m;
  for (const auto& r : rows) {
    if (!r.is_array() || static_cast<std::int64_t>(r.size()) != n) throw DomainError("lattice rows must have length n");
    std::vector<BigInt> row;
    for (const auto& v : r) row.push_back(big_from_json(v));
    m.push_back(std::move(row));
  }
  std::string source = j.contains("source") && j["source"].is_string() ? j["source"].get<std::string>() : "";
  auto l = LatticeBasis::from_generators(m, static_cast<int>(n), source);
  if (j.contains("volume") && big_from_json(j["volume"]) != l.volume())
    throw DomainError("stated lattice volume does not match the basis");
  return l;
}

Json to_json(const LinearCode& c) {
  Json out{{"p", c.p()}, {"generator", c.generator()}, {"distance", c.claimed_distance()}};
  if (!c.label().empty()) out["label"] = c.label();
  return out;
}

LinearCode code_from_json(const Json& j) {
  const auto p = int_field(j, "p");
  const auto& g = require(j, "generator");
  if (!g.is_array()) throw DomainError("\"generator\" must be an array");
  ModpMatrix gen;
  for (const auto& row : g) gen.push_back(int_vector(row, "generator row"));
  const int d = j.contains("distance") ? static_cast<int>(int_field(j, "distance")) : 1;
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  if (p < 2 || p > std::numeric_limits<std::uint32_t>::max()) throw DomainError("p out of range");
  return LinearCode(static_cast<std::uint32_t>(p), std::move(gen), d, label);
}

std::string decimal6(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  const bool neg = num < 0;
  if (neg) num = -num;
  // round half up at the sixth place
  const BigInt scaled = (num * 2'000'000 + den) / (2 * den);
  const BigInt whole = scaled / 1'000'000;
  std::string frac = to_string(BigInt(scaled % 1'000'000));
  frac.insert(0, 6 - frac.size(), '0');
  return (neg ? "-" : "") + to_string(whole) + "." + frac;
}

Json density_record(const BallSpec& ball, const BigInt& order) {
  if (order <= 0) throw DomainError("density needs a positive group order or volume");
  const BigInt size = ball_size(ball);
  const Rational d(size, order);
  return Json{{"ball", to_json(ball)},
              {"group_order", to_string(order)},
              {"density_num", to_string(size)},
              {"density_den", to_string(order)},
              {"density", to_string(d)},
              {"density_decimal", decimal6(d)}};
}

}  // namespace magball::io
