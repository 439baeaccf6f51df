#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hermbound/bound.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/series.hpp"

namespace hermbound {

// All emitted output uses a fixed decimal format (9 significant digits) and a
// fixed field order, so repeated runs are byte-identical and parse/re-emit
// round-trips exactly.

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

class JsonWriter {
 public:
  JsonWriter& begin() { return open('{'); }
  JsonWriter& end() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }

  JsonWriter& key(std::string_view k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    suppress_comma_ = true;
    return *this;
  }
  JsonWriter& value(double v) { return item(format_g9(v)); }
  JsonWriter& value(int v) { return item(std::to_string(v)); }
  JsonWriter& value(long v) { return item(std::to_string(v)); }
  JsonWriter& value(bool v) { return item(v ? "true" : "false"); }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  /// Splice pre-serialized JSON in place.
  JsonWriter& raw(std::string_view json) { return item(json); }
  JsonWriter& value(std::string_view s) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    quoted += '"';
    return item(quoted);
  }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& item(std::string_view text) {
    comma();
    out_ += text;
    return *this;
  }
  JsonWriter& open(char c) {
    comma();
    out_ += c;
    need_comma_ = false;
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    need_comma_ = true;
    return *this;
  }
  void comma() {
    if (suppress_comma_) {
      suppress_comma_ = false;
      return;
    }
    if (need_comma_) out_ += ',';
    need_comma_ = true;
  }
  std::string out_;
  bool need_comma_ = false;
  bool suppress_comma_ = false;
};

inline std::string to_json(const bound::BoundBreakdown& b) {
  JsonWriter w;
  w.begin();
  w.key("K").value(b.K);
  w.key("n").value(b.n);
  w.key("N").value(b.N);
  w.key("T").value(b.T);
  w.key("term_tail_t").value(b.term_tail_t);
  w.key("term_tail_omega").value(b.term_tail_omega);
  w.key("term_fN").value(b.term_fN);
  w.key("term_sansone").value(b.term_sansone);
  w.key("total").value(b.total);
  w.end();
  return w.str();
}

inline bound::BoundBreakdown breakdown_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  bound::BoundBreakdown b;
  b.K = j.at("K").get<int>();
  b.n = j.at("n").get<int>();
  b.N = j.at("N").get<double>();
  b.T = j.at("T").get<double>();
  b.term_tail_t = j.at("term_tail_t").get<double>();
  b.term_tail_omega = j.at("term_tail_omega").get<double>();
  b.term_fN = j.at("term_fN").get<double>();
  b.term_sansone = j.at("term_sansone").get<double>();
  b.total = j.at("total").get<double>();
  return b;
}

inline std::string to_json(const bound::MomentLedger& m) {
  JsonWriter w;
  w.begin();
  w.key("n").value(m.n);
  w.key("T").value(m.T);
  w.key("N").value(m.N);
  w.key("abs_moment").begin_array();
  for (double v : m.abs_moment) w.value(v);
  w.end_array();
  w.key("deriv_abs_moment").begin_array();
  for (double v : m.deriv_abs_moment) w.value(v);
  w.end_array();
  w.key("l2_alpha1").value(m.l2_alpha1);
  w.key("l2_alpha2").value(m.l2_alpha2);
  w.key("l2_alpha3").value(m.l2_alpha3);
  w.key("l2_fN").value(m.l2_fN);
  w.key("l2_fN_alpha4").value(m.l2_fN_alpha4);
  w.key("l2_f_omega").value(m.l2_f_omega);
  w.key("l2_fN_omega").value(m.l2_fN_omega);
  w.key("boundary").value(m.boundary);
  w.key("tail_t").value(m.tail_t);
  w.key("tail_omega").value(m.tail_omega);
  w.end();
  return w.str();
}

/// Mixture literal: a JSON array of [weight, scale, center] triples.
inline GaussianMixture mixture_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("mixture literal: ") + e.what());
  }
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("mixture literal: expected a non-empty array of triples");
  std::vector<MixtureComponent> comps;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 3)
      throw std::invalid_argument("mixture literal: each component must be [w, a, c]");
    comps.push_back({item[0].get<double>(), item[1].get<double>(), item[2].get<double>()});
  }
  return GaussianMixture(comps);
}

inline std::string to_json(const GaussianMixture& m) {
  JsonWriter w;
  w.begin_array();
  for (const auto& c : m.components()) {
    w.begin_array();
    w.value(c.weight).value(c.scale).value(c.center);
    w.end_array();
  }
  w.end_array();
  return w.str();
}

}  // namespace hermbound
