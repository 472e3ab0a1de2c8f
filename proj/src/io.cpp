#include "dsupp/io.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace dsupp {

Json elem_to_json(const Field& F, Elem a) {
  if (F.degree() == 1) return int(a);
  return F.coeffs(a);
}

Elem elem_from_json(const Field& F, const Json& j) {
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    require(v >= 0 && v < F.p(), Errc::ParseError, "field element out of range");
    return F.from_int(v);
  }
  require(j.is_array() && int(j.size()) == F.degree(), Errc::ParseError, "bad field element");
  std::vector<int> c = j.get<std::vector<int>>();
  for (int x : c) require(x >= 0 && x < F.p(), Errc::ParseError, "coefficient out of range");
  return F.from_coeffs(c);
}

Json vec_to_json(const Field& F, const Vec& v) {
  Json out = Json::array();
  for (Elem a : v) out.push_back(elem_to_json(F, a));
  return out;
}

Vec vec_from_json(const Field& F, const Json& j) {
  require(j.is_array(), Errc::ParseError, "expected a vector");
  Vec v;
  for (const auto& x : j) v.push_back(elem_from_json(F, x));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  const Field& F = m.F();
  Json entries = Json::array();
  for (Elem a : m.data()) entries.push_back(F.coeffs(a));
  return Json{{"p", F.p()},       {"e", F.degree()},    {"modulus", F.modulus()},
              {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const FieldPtr& F, const Json& j) {
  try {
    require(j.at("p").get<int>() == F->p() && j.at("e").get<int>() == F->degree(), Errc::FieldMismatch,
            "matrix over a different field");
    require(j.at("modulus").get<std::vector<int>>() == F->modulus(), Errc::FieldMismatch, "different modulus");
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    const Json& e = j.at("entries");
    require(rows >= 0 && cols >= 0 && e.is_array() && e.size() == std::size_t(rows) * std::size_t(cols),
            Errc::ParseError, "entry count does not match the shape");
    Matrix m(F, rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const Json& x = e[std::size_t(r) * cols + c];
        require(x.is_array() && int(x.size()) == F->degree(), Errc::ParseError, "bad coefficient vector");
        m.at(r, c) = elem_from_json(*F, F->degree() == 1 ? x[0] : x);
      }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    fail(Errc::ParseError, ex.what());
  }
}

Json field_to_json(const Field& F) {
  return Json{{"p", F.p()}, {"e", F.degree()}, {"modulus", F.modulus()}};
}

Json algebra_to_json(const Algebra& A) {
  const Field& F = A.F();
  Json mult = Json::array();
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      auto row = A.table().get(i, j);
      for (std::size_t t = 0; t < row.size; ++t)
        mult.push_back(Json::array({i, j, int(row.idx[t]), elem_to_json(F, row.val[t])}));
    }
  Json j{{"field", field_to_json(F)}, {"labels", A.labels()}, {"mult", mult}, {"unit", vec_to_json(F, A.unit())}};
  j["augmentation"] = A.augmentation() ? vec_to_json(F, *A.augmentation()) : Json();
  return j;
}

Json hopf_to_json(const HopfAlgebra& H) {
  const Field& F = H.alg().F();
  Json comult = Json::array();
  for (int i = 0; i < H.dim(); ++i)
    for (auto* t = H.comult().begin(i); t != H.comult().end(i); ++t)
      comult.push_back(Json::array({i, int(t->a), int(t->b), elem_to_json(F, t->c)}));
  return Json{{"algebra", algebra_to_json(H.alg())},
              {"comult", comult},
              {"counit", vec_to_json(F, H.counit())},
              {"antipode", matrix_to_json(H.antipode())}};
}

Json module_to_json(const Module& M) {
  Json act = Json::array();
  for (const Matrix& m : M.actions()) act.push_back(matrix_to_json(m));
  return Json{{"algebra", content_hash(*M.algebra())},
              {"field", field_to_json(*M.field())},
              {"dim", M.dim()},
              {"action", act}};
}

Module module_from_json(const Json& j, const AlgebraPtr& A) {
  try {
    require(j.at("algebra").get<std::string>() == content_hash(*A), Errc::DimensionMismatch,
            "module refers to a different algebra");
    int dim = j.at("dim").get<int>();
    const Json& act = j.at("action");
    require(act.is_array() && int(act.size()) == A->dim(), Errc::DimensionMismatch, "need one matrix per basis element");
    std::vector<Matrix> mats;
    for (const auto& m : act) {
      Matrix x = matrix_from_json(A->field(), m);
      require(x.rows() == dim && x.cols() == dim, Errc::DimensionMismatch, "action matrix has the wrong size");
      mats.push_back(std::move(x));
    }
    Module M(A, dim, std::move(mats));
    require(check_module(M), Errc::ParseError, "action does not satisfy the module law");
    return M;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

Json bundle_to_json(const GroupSchemeBundle& b) {
  return Json{{"group", b.name},
              {"p", b.p},
              {"r", b.r},
              {"id", b.id()},
              {"double_hash", content_hash(b.D->alg())},
              {"kG", hopf_to_json(*b.kG)},
              {"OG", hopf_to_json(*b.OG)},
              {"kSigma", hopf_to_json(*b.sigma)},
              {"D", hopf_to_json(*b.D)},
              {"quasilog_seed", matrix_to_json(b.seed)},
              {"al", matrix_to_json(b.al)},
              {"parametrization", "restricted-nilpotent"}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string content_hash(const Algebra& A) { return sha256_hex(algebra_to_json(A).dump()); }

}  // namespace dsupp
