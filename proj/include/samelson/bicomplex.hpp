#pragma once

// Bounded double complexes over Q(i, sqrt3): validation, the five cohomologies,
// zig-zag decomposition, tensor products and the Aeppli Kunneth comparison.
// del raises p, delbar raises q; matrices act on column coordinate vectors.

#include "samelson/number.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace samelson {

using Bidegree = std::pair<int, int>;

class DoubleComplex {
public:
  void set_dim(Bidegree b, int d);
  int dim(Bidegree b) const;
  /// del: (p,q) -> (p+1,q), delbar: (p,q) -> (p,q+1); zero matrices when unset.
  MatG del(Bidegree b) const;
  MatG delbar(Bidegree b) const;
  void set_del(Bidegree b, MatG m);
  void set_delbar(Bidegree b, MatG m);
  /// del delbar: (p,q) -> (p+1,q+1).
  MatG del_delbar(Bidegree b) const;

  std::vector<Bidegree> support() const;  // bidegrees with positive dimension, sorted
  int total_dimension() const;
  int max_total_degree() const;
  int min_total_degree() const;

  /// Optional basis labels per bidegree (used for model generators).
  std::map<Bidegree, std::vector<std::string>> labels;

private:
  std::map<Bidegree, int> dims_;
  std::map<Bidegree, MatG> del_;
  std::map<Bidegree, MatG> delbar_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  Bidegree where{0, 0};
};

ValidationReport validate(const DoubleComplex& D);

enum class Flavor { Dolbeault, ConjDolbeault, BottChern, Aeppli, DeRham };
const char* flavor_name(Flavor f);
const std::vector<Flavor>& all_flavors();

struct CohomologyTable {
  std::map<Bidegree, int> dolbeault;       // ker delbar / im delbar
  std::map<Bidegree, int> conj_dolbeault;  // ker del / im del
  std::map<Bidegree, int> bott_chern;
  std::map<Bidegree, int> aeppli;
  std::map<int, int> de_rham;              // by total degree

  int get(Flavor f, Bidegree b) const;     // de Rham uses b.first as the degree
  bool operator==(const CohomologyTable& o) const;
};

/// Dimensions over the support and its one-step neighbourhood.
CohomologyTable cohomology(const DoubleComplex& D);
int cohomology_dim(const DoubleComplex& D, Flavor f, Bidegree b);

/// Columns spanning a complement of boundaries in cycles, in A^{p,q} coordinates
/// (total-degree coordinates for de Rham, blocks ordered by p).
MatG representatives(const DoubleComplex& D, Flavor f, Bidegree b);
/// Coordinates of the class of a cycle v against representatives(D, f, b).
VecG class_coordinates(const DoubleComplex& D, Flavor f, Bidegree b, const VecG& v);

/// Indecomposable summand. Squares are anchored at their lower-left corner; zig-zags
/// live between total degrees band and band+1 on the staircase t0..t1, where even t = 2p
/// is the spot (p, band-p) and odd t = 2p+1 is the spot (p+1, band-p).
struct ZigzagPiece {
  enum class Kind { Square, Zigzag } kind = Kind::Zigzag;
  Bidegree anchor{0, 0};
  int band = 0, t0 = 0, t1 = 0;
  int multiplicity = 0;

  std::vector<Bidegree> spots() const;
  int length() const { return kind == Kind::Square ? 4 : t1 - t0 + 1; }
  std::string describe() const;
};

struct ZigzagDecomposition {
  std::vector<ZigzagPiece> pieces;
  int total_dimension() const;
  int count(ZigzagPiece::Kind k) const;
};

/// Decomposes D and cross-checks the result against cohomology(D); throws on mismatch.
ZigzagDecomposition zigzag_decompose(const DoubleComplex& D);
CohomologyTable cohomology_from_pieces(const ZigzagDecomposition& Z);

/// Complex realizing one indecomposable (all spots one-dimensional).
DoubleComplex piece_complex(const ZigzagPiece& piece);
DoubleComplex direct_sum(const DoubleComplex& a, const DoubleComplex& b);
/// New basis of A^{p,q} given by the columns of P[(p,q)] (identity where absent).
DoubleComplex change_basis(const DoubleComplex& D, const std::map<Bidegree, MatG>& P);
/// Koszul sign: the second factor's differentials pick up (-1)^{p+q} of the first.
/// Bidegrees of total degree above max_total (when given) are dropped (quotient complex).
DoubleComplex tensor_product(const DoubleComplex& a, const DoubleComplex& b, std::optional<int> max_total = {});
/// Truncation to total degree <= n (quotient complex).
DoubleComplex truncate(const DoubleComplex& D, int n);

struct KunnethReport {
  std::map<Bidegree, int> direct;     // h_A of the product, computed directly
  std::map<Bidegree, int> predicted;  // kernel of the H_A (x) H_A -> H_BC (x) H_BC map
  std::map<Bidegree, int> defect;     // direct - predicted
};

/// Bidegrees with p + q <= max_total - 2 of the truncated product are reported.
KunnethReport kunneth_aeppli_check(const DoubleComplex& a, const DoubleComplex& b, int max_total);

/// Direct sum of random squares and zig-zags in [0,3]^2 (dims <= max_dim), then a random basis change.
DoubleComplex random_complex(std::uint64_t seed, int max_dim = 4);

nlohmann::json to_json(const DoubleComplex& D);
DoubleComplex double_complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CohomologyTable& t);
std::string text_grid(const CohomologyTable& t);

}  // namespace samelson
