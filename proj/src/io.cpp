#include "entanglib/io.hpp"

#include <sstream>

namespace entanglib {

namespace {

json cplx_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string exponents_key(const MonomialIndex& j) {
  std::ostringstream out;
  out << "[";
  for (std::size_t v = 0; v < j.size(); ++v) out << (v ? "," : "") << j[v];
  out << "]";
  return out.str();
}

MonomialIndex exponents_from_key(const std::string& key) {
  MonomialIndex out;
  std::string trimmed;
  for (char c : key)
    if (c != '[' && c != ']' && c != ' ') trimmed += c;
  std::istringstream in(trimmed);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

json tensor_to_json(const DenseTensor& t) {
  json j;
  j["shape"] = t.shape().dims();
  json entries = json::array();
  for (Eigen::Index i = 0; i < t.entries().size(); ++i)
    entries.push_back(cplx_to_json(t.entries()[i]));
  j["entries"] = entries;
  return j;
}

DenseTensor tensor_from_json(const json& j) {
  Shape shape(j.at("shape").get<std::vector<std::int64_t>>());
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<std::int64_t>(entries.size()) != shape.size())
    throw std::invalid_argument("tensor entries count does not match the shape");
  Vec e(shape.size());
  for (std::int64_t i = 0; i < shape.size(); ++i)
    e[i] = cplx_from_json(entries[static_cast<std::size_t>(i)]);
  return DenseTensor(std::move(shape), std::move(e));
}

json sym_to_json(const SymTensor& s) {
  json coeffs = json::object();
  for (std::size_t k = 0; k < s.support().size(); ++k) {
    const cplx v = s.coeffs()[static_cast<Eigen::Index>(k)];
    if (v != cplx(0.0, 0.0)) coeffs[exponents_key(s.support()[k])] = cplx_to_json(v);
  }
  return json{{"n", s.n()},
              {"d", s.d()},
              {"field", s.field() == FieldTag::real ? "real" : "complex"},
              {"coeffs", coeffs}};
}

SymTensor sym_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  FieldTag field = FieldTag::complex_;
  if (j.contains("field") && j["field"].get<std::string>() == "real")
    field = FieldTag::real;
  SymTensor s(n, d, field);
  for (const auto& [key, val] : j.at("coeffs").items()) {
    MonomialIndex e = exponents_from_key(key);
    if (static_cast<int>(e.size()) != n)
      throw std::invalid_argument("coefficient key length does not match n");
    s.set_coeff(e, cplx_from_json(val));
  }
  return s;
}

json hermitian_to_json(const HermitianTensor& b) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < b.matrix().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < b.matrix().cols(); ++c)
      row.push_back(cplx_to_json(b.matrix()(r, c)));
    rows.push_back(row);
  }
  return json{{"shape", b.shape().dims()},
              {"matrix", rows},
              {"structure", structure_name(b.structure())}};
}

HermitianTensor hermitian_from_json(const json& j) {
  Shape shape(j.at("shape").get<std::vector<std::int64_t>>());
  const auto& rows = j.at("matrix");
  if (static_cast<std::int64_t>(rows.size()) != shape.size())
    throw std::invalid_argument("matrix row count does not match the shape");
  Mat m(shape.size(), shape.size());
  for (std::int64_t r = 0; r < shape.size(); ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<std::int64_t>(row.size()) != shape.size())
      throw std::invalid_argument("matrix column count does not match the shape");
    for (std::int64_t c = 0; c < shape.size(); ++c)
      m(r, c) = cplx_from_json(row[static_cast<std::size_t>(c)]);
  }
  Structure st = Structure::general;
  if (j.contains("structure")) {
    const std::string name = j["structure"].get<std::string>();
    if (name == "bisymmetric") st = Structure::bisymmetric;
    else if (name == "biskew") st = Structure::biskew;
    else if (name == "realsymmetric") st = Structure::realsymmetric;
  }
  return HermitianTensor(std::move(shape), std::move(m), st);
}

json estimate_to_json(const NormEstimate& e, const Decomposition* dec) {
  json j;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["epsilon"] = e.epsilon_used;
  j["m"] = e.m_used;
  j["certified"] = e.certified;
  json witness = json::array();
  for (const auto& w : e.witness) {
    json v = json::array();
    for (Eigen::Index i = 0; i < w.size(); ++i) v.push_back(cplx_to_json(w[i]));
    witness.push_back(v);
  }
  j["witness"] = witness;
  if (dec) {
    json terms = json::array();
    for (const auto& t : dec->terms) {
      json term;
      term["weight"] = t.weight;
      term["sign"] = t.sign;
      json vecs = json::array();
      for (const auto& w : t.vectors) {
        json v = json::array();
        for (Eigen::Index i = 0; i < w.size(); ++i) v.push_back(cplx_to_json(w[i]));
        vecs.push_back(v);
      }
      term["vector"] = vecs.size() == 1 ? vecs[0] : vecs;
      terms.push_back(term);
    }
    j["decomposition"] = terms;
  }
  return j;
}

namespace {
json bracket_to_json(const Bracket& b) { return json::array({b.lower, b.upper}); }
}  // namespace

json report_to_json(const EntanglementReport& r) {
  return json{{"gme", bracket_to_json(r.gme)},
              {"log_spec", bracket_to_json(r.log_spec)},
              {"nuclear_energy", bracket_to_json(r.nuclear_energy)},
              {"spectral", bracket_to_json(r.spectral)},
              {"nuclear", bracket_to_json(r.nuclear)},
              {"state_norm", r.state_norm}};
}

json verdict_to_json(const SeparabilityVerdict& v) {
  json j;
  j["status"] = sep_status_name(v.status);
  j["nuclear"] = json::array({v.nuclear_lower, v.nuclear_upper});
  j["margin"] = v.margin;
  j["ppt"] = json{{"all", v.ppt.all_ok},
                  {"modes", v.ppt.mode_ok},
                  {"worst_eigenvalue", v.ppt.worst_eigenvalue}};
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.certificate.terms.empty()) {
    json terms = json::array();
    for (const auto& t : v.certificate.terms) {
      json term;
      term["weight"] = t.weight;
      term["sign"] = t.sign;
      json vecs = json::array();
      for (const auto& w : t.vectors) {
        json vv = json::array();
        for (Eigen::Index i = 0; i < w.size(); ++i) vv.push_back(cplx_to_json(w[i]));
        vecs.push_back(vv);
      }
      term["vector"] = vecs.size() == 1 ? vecs[0] : vecs;
      terms.push_back(term);
    }
    j["certificate"] = terms;
  }
  if (v.witness.size() > 0) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < v.witness.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < v.witness.cols(); ++c)
        row.push_back(cplx_to_json(v.witness(r, c)));
      rows.push_back(row);
    }
    j["witness"] = rows;
  }
  return j;
}

json state_to_json(const NamedState& s) {
  json j;
  j["label"] = s.label;
  j["tensor"] = tensor_to_json(s.dense);
  if (s.symmetric) j["symmetric"] = sym_to_json(*s.symmetric);
  if (s.known_spectral) j["known_spectral"] = *s.known_spectral;
  if (s.known_nuclear) j["known_nuclear"] = *s.known_nuclear;
  j["provenance"] = s.provenance;
  return j;
}

ParsedTensor parse_tensor_json(const json& j) {
  ParsedTensor out;
  if (j.contains("matrix")) {
    out.hermitian = hermitian_from_json(j);
  } else if (j.contains("coeffs")) {
    out.symmetric = sym_from_json(j);
    out.dense = sym_to_dense(*out.symmetric);
  } else if (j.contains("tensor")) {
    return parse_tensor_json(j.at("tensor").is_object() && j.contains("symmetric")
                                 ? j.at("symmetric")
                                 : j.at("tensor"));
  } else {
    out.dense = tensor_from_json(j);
    if (out.dense->shape().cubical()) {
      SymTensor s = symmetrize(*out.dense);
      if ((sym_to_dense(s).entries() - out.dense->entries()).norm() <
          1e-12 * std::max(1.0, out.dense->norm()))
        out.symmetric = s;
    }
  }
  return out;
}

}  // namespace entanglib
