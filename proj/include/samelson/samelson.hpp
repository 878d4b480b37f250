#pragma once

#include "samelson/liealg.hpp"

#include <string>
#include <vector>

namespace samelson {

/// J acts on the real algebra; J E_alpha = i E_alpha for positive alpha.
struct SamelsonStructure {
  MatR J;                                   // n x n
  MatR torus_J;                             // r x r in torus coordinates
  std::vector<int> positive_roots;          // indices into CartanData::roots
  std::vector<std::vector<int>> components; // blocks of factor indices
};

enum class TorusJKind {
  Default,  // orthogonal frame per factor, consecutive frame vectors paired globally
  Product,  // pairs kept inside each factor
  Mixing,   // default conjugated by rotations coupling neighbouring pairs
};

TorusJKind parse_torus_j_kind(const std::string& name);

/// Reference Gram matrix restricted to the torus.
MatR torus_gram(const LieAlgebra& L, const CartanData& cd);

/// Builds a reference-orthogonal torus complex structure of the requested kind.
MatR torus_complex_structure(const LieAlgebra& L, const CartanData& cd, TorusJKind kind);

SamelsonStructure build_samelson_structure(const LieAlgebra& L, const CartanData& cd, const MatR& torus_J);

/// Exact re-check of every invariant; empty string when all hold.
std::string check_samelson(const LieAlgebra& L, const CartanData& cd, const SamelsonStructure& S);

/// Nijenhuis tensor N(e_i, e_j) for all basis pairs; true when all vanish.
bool nijenhuis_vanishes(const LieAlgebra& L, const MatR& J);

std::vector<std::vector<int>> irreducible_components(const SamelsonStructure& S, const LieAlgebra& L,
                                                     const CartanData& cd);

/// g = sum over components of lambda_c times the reference metric of the component.
MatR biinvariant_metric(const SamelsonStructure& S, const LieAlgebra& L, const std::vector<Rational>& lambda);

/// max |g([x,y],z) + g(y,[x,z])| over basis triples (exact zero for bi-invariant g).
Surd ad_invariance_defect(const LieAlgebra& L, const MatR& g);

nlohmann::json to_json(const SamelsonStructure& S);

}  // namespace samelson
