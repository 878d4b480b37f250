#include "samelson/bicomplex.hpp"

#include "samelson/exact_linalg.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace samelson {

namespace {

Bidegree shift(Bidegree b, int dp, int dq) { return {b.first + dp, b.second + dq}; }

MatG checked(const MatG& m, int rows, int cols, const char* what, Bidegree b) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << what << " at (" << b.first << "," << b.second << ") has shape " << m.rows() << "x" << m.cols()
       << ", expected " << rows << "x" << cols;
    throw std::invalid_argument(os.str());
  }
  return m;
}

}  // namespace

void DoubleComplex::set_dim(Bidegree b, int d) {
  if (d < 0) throw std::invalid_argument("negative dimension");
  if (d == 0)
    dims_.erase(b);
  else
    dims_[b] = d;
}

int DoubleComplex::dim(Bidegree b) const {
  auto it = dims_.find(b);
  return it == dims_.end() ? 0 : it->second;
}

MatG DoubleComplex::del(Bidegree b) const {
  auto it = del_.find(b);
  if (it == del_.end()) return zeros<Gauss>(dim(shift(b, 1, 0)), dim(b));
  return it->second;
}

MatG DoubleComplex::delbar(Bidegree b) const {
  auto it = delbar_.find(b);
  if (it == delbar_.end()) return zeros<Gauss>(dim(shift(b, 0, 1)), dim(b));
  return it->second;
}

void DoubleComplex::set_del(Bidegree b, MatG m) {
  del_[b] = checked(m, dim(shift(b, 1, 0)), dim(b), "del", b);
}

void DoubleComplex::set_delbar(Bidegree b, MatG m) {
  delbar_[b] = checked(m, dim(shift(b, 0, 1)), dim(b), "delbar", b);
}

MatG DoubleComplex::del_delbar(Bidegree b) const { return mul<Gauss>(del(shift(b, 0, 1)), delbar(b)); }

std::vector<Bidegree> DoubleComplex::support() const {
  std::vector<Bidegree> out;
  for (const auto& [b, d] : dims_) out.push_back(b);
  return out;
}

int DoubleComplex::total_dimension() const {
  int s = 0;
  for (const auto& [b, d] : dims_) s += d;
  return s;
}

int DoubleComplex::max_total_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& [b, d] : dims_) {
    m = first ? b.first + b.second : std::max(m, b.first + b.second);
    first = false;
  }
  return m;
}

int DoubleComplex::min_total_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& [b, d] : dims_) {
    m = first ? b.first + b.second : std::min(m, b.first + b.second);
    first = false;
  }
  return m;
}

ValidationReport validate(const DoubleComplex& D) {
  auto fail = [](Bidegree b, const std::string& what) {
    std::ostringstream os;
    os << what << " at (" << b.first << "," << b.second << ")";
    return ValidationReport{false, os.str(), b};
  };
  for (Bidegree b : D.support()) {
    MatG d = D.del(b), db = D.delbar(b);
    if (d.rows() != D.dim(shift(b, 1, 0)) || d.cols() != D.dim(b)) return fail(b, "del has the wrong shape");
    if (db.rows() != D.dim(shift(b, 0, 1)) || db.cols() != D.dim(b)) return fail(b, "delbar has the wrong shape");
    if (!is_zero_matrix<Gauss>(mul<Gauss>(D.del(shift(b, 1, 0)), d))) return fail(b, "del^2 != 0");
    if (!is_zero_matrix<Gauss>(mul<Gauss>(D.delbar(shift(b, 0, 1)), db))) return fail(b, "delbar^2 != 0");
    MatG anti = D.del_delbar(b) + mul<Gauss>(D.delbar(shift(b, 1, 0)), d);
    if (!is_zero_matrix<Gauss>(anti)) return fail(b, "del delbar + delbar del != 0");
  }
  return {};
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Dolbeault: return "dolbeault";
    case Flavor::ConjDolbeault: return "conj_dolbeault";
    case Flavor::BottChern: return "bott_chern";
    case Flavor::Aeppli: return "aeppli";
    case Flavor::DeRham: return "de_rham";
  }
  return "?";
}

const std::vector<Flavor>& all_flavors() {
  static const std::vector<Flavor> v{Flavor::Dolbeault, Flavor::ConjDolbeault, Flavor::BottChern, Flavor::Aeppli,
                                     Flavor::DeRham};
  return v;
}

namespace {

int lookup(const std::map<Bidegree, int>& m, Bidegree b) {
  auto it = m.find(b);
  return it == m.end() ? 0 : it->second;
}

// Total complex: degree k is the direct sum of A^{p,k-p}, blocks ordered by p.
struct Totalization {
  std::vector<Bidegree> blocks;
  std::vector<int> offsets;
  int size = 0;
};

Totalization total_degree(const DoubleComplex& D, int k) {
  Totalization t;
  for (Bidegree b : D.support())
    if (b.first + b.second == k) {
      t.blocks.push_back(b);
      t.offsets.push_back(t.size);
      t.size += D.dim(b);
    }
  return t;
}

MatG total_d(const DoubleComplex& D, int k) {
  Totalization src = total_degree(D, k), dst = total_degree(D, k + 1);
  MatG m = zeros<Gauss>(dst.size, src.size);
  for (std::size_t s = 0; s < src.blocks.size(); ++s)
    for (std::size_t t = 0; t < dst.blocks.size(); ++t) {
      Bidegree a = src.blocks[s], b = dst.blocks[t];
      MatG blk;
      if (b == shift(a, 1, 0))
        blk = D.del(a);
      else if (b == shift(a, 0, 1))
        blk = D.delbar(a);
      else
        continue;
      m.block(dst.offsets[t], src.offsets[s], blk.rows(), blk.cols()) = blk;
    }
  return m;
}

// Cycles (as a matrix whose kernel they are) and boundaries (as spanning columns).
struct CyclesBoundaries {
  MatG cycle_condition;  // cycles = kernel
  MatG boundaries;       // columns
  int n = 0;
};

CyclesBoundaries cycles_boundaries(const DoubleComplex& D, Flavor f, Bidegree b) {
  CyclesBoundaries cb;
  switch (f) {
    case Flavor::Dolbeault:
      cb.n = D.dim(b);
      cb.cycle_condition = D.delbar(b);
      cb.boundaries = D.delbar(shift(b, 0, -1));
      break;
    case Flavor::ConjDolbeault:
      cb.n = D.dim(b);
      cb.cycle_condition = D.del(b);
      cb.boundaries = D.del(shift(b, -1, 0));
      break;
    case Flavor::BottChern:
      cb.n = D.dim(b);
      cb.cycle_condition = vcat<Gauss>(D.del(b), D.delbar(b));
      cb.boundaries = D.del_delbar(shift(b, -1, -1));
      break;
    case Flavor::Aeppli:
      cb.n = D.dim(b);
      cb.cycle_condition = D.del_delbar(b);
      cb.boundaries = hcat<Gauss>(D.del(shift(b, -1, 0)), D.delbar(shift(b, 0, -1)));
      break;
    case Flavor::DeRham: {
      const int k = b.first;
      cb.n = total_degree(D, k).size;
      cb.cycle_condition = total_d(D, k);
      cb.boundaries = total_d(D, k - 1);
      break;
    }
  }
  return cb;
}

}  // namespace

int CohomologyTable::get(Flavor f, Bidegree b) const {
  switch (f) {
    case Flavor::Dolbeault: return lookup(dolbeault, b);
    case Flavor::ConjDolbeault: return lookup(conj_dolbeault, b);
    case Flavor::BottChern: return lookup(bott_chern, b);
    case Flavor::Aeppli: return lookup(aeppli, b);
    case Flavor::DeRham: {
      auto it = de_rham.find(b.first);
      return it == de_rham.end() ? 0 : it->second;
    }
  }
  return 0;
}

namespace {

template <class K>
std::map<K, int> nonzero(const std::map<K, int>& m) {
  std::map<K, int> out;
  for (const auto& [k, v] : m)
    if (v != 0) out[k] = v;
  return out;
}

}  // namespace

bool CohomologyTable::operator==(const CohomologyTable& o) const {
  return nonzero(dolbeault) == nonzero(o.dolbeault) && nonzero(conj_dolbeault) == nonzero(o.conj_dolbeault) &&
         nonzero(bott_chern) == nonzero(o.bott_chern) && nonzero(aeppli) == nonzero(o.aeppli) &&
         nonzero(de_rham) == nonzero(o.de_rham);
}

int cohomology_dim(const DoubleComplex& D, Flavor f, Bidegree b) {
  CyclesBoundaries cb = cycles_boundaries(D, f, b);
  if (cb.n == 0) return 0;
  return cb.n - rank<Gauss>(cb.cycle_condition) - rank<Gauss>(cb.boundaries);
}

CohomologyTable cohomology(const DoubleComplex& D) {
  CohomologyTable t;
  for (Bidegree b : D.support()) {
    if (int v = cohomology_dim(D, Flavor::Dolbeault, b)) t.dolbeault[b] = v;
    if (int v = cohomology_dim(D, Flavor::ConjDolbeault, b)) t.conj_dolbeault[b] = v;
    if (int v = cohomology_dim(D, Flavor::BottChern, b)) t.bott_chern[b] = v;
    if (int v = cohomology_dim(D, Flavor::Aeppli, b)) t.aeppli[b] = v;
  }
  std::set<int> degrees;
  for (Bidegree b : D.support()) degrees.insert(b.first + b.second);
  for (int k : degrees)
    if (int v = cohomology_dim(D, Flavor::DeRham, {k, 0})) t.de_rham[k] = v;
  return t;
}

MatG representatives(const DoubleComplex& D, Flavor f, Bidegree b) {
  CyclesBoundaries cb = cycles_boundaries(D, f, b);
  if (cb.n == 0) return zeros<Gauss>(0, 0);
  MatG Z = cb.cycle_condition.rows() == 0 ? identity<Gauss>(cb.n) : kernel<Gauss>(cb.cycle_condition);
  return extend_basis<Gauss>(cb.boundaries, Z);
}

VecG class_coordinates(const DoubleComplex& D, Flavor f, Bidegree b, const VecG& v) {
  CyclesBoundaries cb = cycles_boundaries(D, f, b);
  if (v.size() != cb.n) throw std::invalid_argument("class_coordinates: vector has the wrong length");
  if (cb.n == 0) return VecG(0);
  if (cb.cycle_condition.rows() > 0 && !is_zero_matrix<Gauss>(mul<Gauss>(cb.cycle_condition, MatG(v))))
    throw std::invalid_argument(std::string("class_coordinates: not a ") + flavor_name(f) + " cycle");
  MatG R = representatives(D, f, b);
  auto x = solve<Gauss>(hcat<Gauss>(R, cb.boundaries), MatG(v));
  if (!x) throw std::logic_error("class_coordinates: cycle outside representatives + boundaries");
  return x->col(0).head(R.cols());
}

// ---------------------------------------------------------------------------
// pieces

std::vector<Bidegree> ZigzagPiece::spots() const {
  if (kind == Kind::Square)
    return {anchor, shift(anchor, 1, 0), shift(anchor, 0, 1), shift(anchor, 1, 1)};
  std::vector<Bidegree> out;
  for (int t = t0; t <= t1; ++t) {
    // floor division for negative t
    const int p = (t >= 0 ? t : t - 1) / 2;
    if (t - 2 * p == 0)
      out.push_back({p, band - p});
    else
      out.push_back({p + 1, band - p});
  }
  return out;
}

std::string ZigzagPiece::describe() const {
  std::ostringstream os;
  if (kind == Kind::Square) {
    os << "square@(" << anchor.first << "," << anchor.second << ")";
  } else {
    os << "zigzag[";
    auto s = spots();
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << "(" << s[i].first << "," << s[i].second << ")";
    os << "]";
  }
  if (multiplicity != 1) os << " x" << multiplicity;
  return os.str();
}

int ZigzagDecomposition::total_dimension() const {
  int s = 0;
  for (const auto& p : pieces) s += p.length() * p.multiplicity;
  return s;
}

int ZigzagDecomposition::count(ZigzagPiece::Kind k) const {
  int s = 0;
  for (const auto& p : pieces)
    if (p.kind == k) s += p.multiplicity;
  return s;
}

DoubleComplex piece_complex(const ZigzagPiece& piece) {
  DoubleComplex D;
  MatG one = identity<Gauss>(1);
  if (piece.kind == ZigzagPiece::Kind::Square) {
    Bidegree a = piece.anchor;
    for (Bidegree b : piece.spots()) D.set_dim(b, 1);
    D.set_del(a, one);
    D.set_delbar(a, one);
    D.set_del(shift(a, 0, 1), one);
    D.set_delbar(shift(a, 1, 0), MatG(-one));
    return D;
  }
  std::vector<Bidegree> s = piece.spots();
  for (Bidegree b : s) D.set_dim(b, 1);
  for (int t = piece.t0; t <= piece.t1; ++t) {
    if (((t % 2) + 2) % 2 != 0) continue;
    Bidegree src = s[t - piece.t0];
    if (t + 1 <= piece.t1) D.set_del(src, one);
    if (t - 1 >= piece.t0) D.set_delbar(src, one);
  }
  return D;
}

namespace {

// Quotient of D by the subcomplex F spanned (per bidegree) by the given columns.
DoubleComplex quotient(const DoubleComplex& D, const std::map<Bidegree, MatG>& F) {
  std::map<Bidegree, MatG> Q;       // complement columns
  std::map<Bidegree, MatG> to_Q;    // rows: Q-coordinates of a vector modulo F
  DoubleComplex out;
  for (Bidegree b : D.support()) {
    const int n = D.dim(b);
    auto it = F.find(b);
    MatG f = it == F.end() ? zeros<Gauss>(n, 0) : it->second;
    MatG q = extend_basis<Gauss>(f, identity<Gauss>(n));
    if (f.cols() + q.cols() != n) throw std::logic_error("quotient: F columns are dependent");
    MatG inv = inverse<Gauss>(hcat<Gauss>(q, f));
    Q[b] = q;
    to_Q[b] = inv.topRows(q.cols());
    out.set_dim(b, static_cast<int>(q.cols()));
  }
  for (Bidegree b : D.support()) {
    if (out.dim(b) == 0) continue;
    Bidegree r = shift(b, 1, 0), u = shift(b, 0, 1);
    if (out.dim(r) > 0) out.set_del(b, mul<Gauss>(to_Q[r], mul<Gauss>(D.del(b), Q[b])));
    if (out.dim(u) > 0) out.set_delbar(b, mul<Gauss>(to_Q[u], mul<Gauss>(D.delbar(b), Q[b])));
  }
  return out;
}

// Quiver representation on one band: nodes t with spaces V_t (as column bases inside
// the complex), arrows from even nodes to their odd neighbours.
struct BandRep {
  int tmin = 0, tmax = -1;
  std::vector<int> dims;                 // indexed by t - tmin
  std::map<std::pair<int, int>, MatG> arrows;  // (s, t) -> matrix V_s -> V_t
};

int node_dim(const BandRep& R, int t) { return t < R.tmin || t > R.tmax ? 0 : R.dims[t - R.tmin]; }

// rank of lim -> colim of the restriction to [a, b]
int interval_rank(const BandRep& R, int a, int b) {
  for (int t = a; t <= b; ++t)
    if (node_dim(R, t) == 0) return 0;
  std::vector<int> off;
  int total = 0;
  for (int t = a; t <= b; ++t) {
    off.push_back(total);
    total += node_dim(R, t);
  }
  // relations x_t = f(x_s) for each arrow inside [a, b]
  std::vector<MatG> eqs;
  MatG rel_cols = zeros<Gauss>(total, 0);
  for (const auto& [st, f] : R.arrows) {
    auto [s, t] = st;
    if (s < a || s > b || t < a || t > b) continue;
    MatG e = zeros<Gauss>(node_dim(R, t), total);
    e.block(0, off[s - a], f.rows(), f.cols()) = f;
    e.block(0, off[t - a], f.rows(), f.rows()) -= identity<Gauss>(f.rows());
    eqs.push_back(e);
    // colimit relations: iota_s(v) - iota_t(f v) for basis v of V_s
    MatG c = zeros<Gauss>(total, f.cols());
    c.block(off[s - a], 0, f.cols(), f.cols()) = identity<Gauss>(f.cols());
    c.block(off[t - a], 0, f.rows(), f.cols()) -= f;
    rel_cols = hcat<Gauss>(rel_cols, c);
  }
  MatG lim;
  if (eqs.empty()) {
    lim = identity<Gauss>(total);
  } else {
    MatG all = eqs[0];
    for (std::size_t i = 1; i < eqs.size(); ++i) all = vcat<Gauss>(all, eqs[i]);
    lim = kernel<Gauss>(all);
  }
  if (lim.cols() == 0) return 0;
  // image of lim in colim through node a
  const int da = node_dim(R, a);
  MatG img = zeros<Gauss>(total, lim.cols());
  img.topRows(da) = lim.topRows(da);
  return rank<Gauss>(hcat<Gauss>(rel_cols, img)) - rank<Gauss>(rel_cols);
}

CohomologyTable scaled(const CohomologyTable& t, int m) {
  CohomologyTable o = t;
  for (auto* mp : {&o.dolbeault, &o.conj_dolbeault, &o.bott_chern, &o.aeppli})
    for (auto& [k, v] : *mp) v *= m;
  for (auto& [k, v] : o.de_rham) v *= m;
  return o;
}

void accumulate(CohomologyTable& acc, const CohomologyTable& t) {
  auto add = [](auto& dst, const auto& src) {
    for (const auto& [k, v] : src) dst[k] += v;
  };
  add(acc.dolbeault, t.dolbeault);
  add(acc.conj_dolbeault, t.conj_dolbeault);
  add(acc.bott_chern, t.bott_chern);
  add(acc.aeppli, t.aeppli);
  add(acc.de_rham, t.de_rham);
}

}  // namespace

CohomologyTable cohomology_from_pieces(const ZigzagDecomposition& Z) {
  CohomologyTable acc;
  for (const auto& p : Z.pieces) {
    if (p.kind == ZigzagPiece::Kind::Square) continue;  // acyclic
    accumulate(acc, scaled(cohomology(piece_complex(p)), p.multiplicity));
  }
  return acc;
}

ZigzagDecomposition zigzag_decompose(const DoubleComplex& D) {
  ValidationReport vr = validate(D);
  if (!vr.ok) throw std::invalid_argument("zigzag_decompose: " + vr.message);
  ZigzagDecomposition Z;

  // squares: a complement S of ker(del delbar) generates a free summand
  std::map<Bidegree, MatG> F;
  auto add_cols = [&](Bidegree b, const MatG& m) {
    if (m.cols() == 0) return;
    auto it = F.find(b);
    F[b] = it == F.end() ? m : hcat<Gauss>(it->second, m);
  };
  for (Bidegree b : D.support()) {
    MatG dd = D.del_delbar(b);
    const int r = rank<Gauss>(dd);
    if (r == 0) continue;
    ZigzagPiece sq;
    sq.kind = ZigzagPiece::Kind::Square;
    sq.anchor = b;
    sq.multiplicity = r;
    Z.pieces.push_back(sq);
    MatG S = extend_basis<Gauss>(kernel<Gauss>(dd), identity<Gauss>(D.dim(b)));
    add_cols(b, S);
    add_cols(shift(b, 1, 0), mul<Gauss>(D.del(b), S));
    add_cols(shift(b, 0, 1), mul<Gauss>(D.delbar(b), S));
    add_cols(shift(b, 1, 1), mul<Gauss>(dd, S));
  }
  DoubleComplex C = quotient(D, F);

  // C has del delbar = 0; I = im del + im delbar, T = complement of I
  std::map<Bidegree, MatG> I, T;
  for (Bidegree b : C.support()) {
    MatG im = hcat<Gauss>(C.del(shift(b, -1, 0)), C.delbar(shift(b, 0, -1)));
    I[b] = column_basis<Gauss>(im);
    T[b] = extend_basis<Gauss>(I[b], identity<Gauss>(C.dim(b)));
  }
  auto coords_in = [](const MatG& basis, const MatG& v) {
    auto x = solve<Gauss>(basis, v);
    if (!x) throw std::logic_error("zigzag_decompose: image outside the image subspace");
    return *x;
  };

  std::set<int> bands;
  int pmin = 0, pmax = 0;
  bool first = true;
  for (Bidegree b : C.support()) {
    bands.insert(b.first + b.second);
    bands.insert(b.first + b.second - 1);
    pmin = first ? b.first : std::min(pmin, b.first);
    pmax = first ? b.first : std::max(pmax, b.first);
    first = false;
  }
  for (int k : bands) {
    BandRep R;
    R.tmin = 2 * pmin - 3;
    R.tmax = 2 * pmax + 1;
    auto spot = [k](int t) {
      const int p = (t >= 0 ? t : t - 1) / 2;
      return t - 2 * p == 0 ? Bidegree{p, k - p} : Bidegree{p + 1, k - p};
    };
    auto space = [&](int t) -> MatG {
      Bidegree b = spot(t);
      const bool even = ((t % 2) + 2) % 2 == 0;
      auto& m = even ? T : I;
      auto it = m.find(b);
      return it == m.end() ? zeros<Gauss>(C.dim(b), 0) : it->second;
    };
    for (int t = R.tmin; t <= R.tmax; ++t) R.dims.push_back(static_cast<int>(space(t).cols()));
    for (int t = R.tmin; t <= R.tmax; ++t) {
      if (((t % 2) + 2) % 2 != 0 || node_dim(R, t) == 0) continue;
      Bidegree b = spot(t);
      MatG src = space(t);
      if (node_dim(R, t + 1) > 0) R.arrows[{t, t + 1}] = coords_in(space(t + 1), mul<Gauss>(C.del(b), src));
      if (node_dim(R, t - 1) > 0) R.arrows[{t, t - 1}] = coords_in(space(t - 1), mul<Gauss>(C.delbar(b), src));
    }
    auto r = [&](int a, int b) { return a < R.tmin || b > R.tmax ? 0 : interval_rank(R, a, b); };
    for (int a = R.tmin; a <= R.tmax; ++a)
      for (int b = a; b <= R.tmax; ++b) {
        if (node_dim(R, b) == 0) break;
        const int m = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
        if (m < 0) throw std::logic_error("zigzag_decompose: negative interval multiplicity");
        if (m == 0) continue;
        ZigzagPiece z;
        z.band = k;
        z.t0 = a;
        z.t1 = b;
        z.anchor = spot(a);
        z.multiplicity = m;
        Z.pieces.push_back(z);
      }
  }

  if (Z.total_dimension() != D.total_dimension())
    throw std::logic_error("zigzag_decompose: piece dimensions do not add up to the complex");
  if (!(cohomology_from_pieces(Z) == cohomology(D)))
    throw std::logic_error("zigzag_decompose: cross-check against direct cohomology failed");
  return Z;
}

// ---------------------------------------------------------------------------
// constructions

DoubleComplex direct_sum(const DoubleComplex& a, const DoubleComplex& b) {
  DoubleComplex out;
  std::set<Bidegree> all;
  for (Bidegree x : a.support()) all.insert(x);
  for (Bidegree x : b.support()) all.insert(x);
  for (Bidegree x : all) out.set_dim(x, a.dim(x) + b.dim(x));
  auto blockdiag = [](const MatG& x, const MatG& y) {
    MatG m = zeros<Gauss>(x.rows() + y.rows(), x.cols() + y.cols());
    if (x.size()) m.topLeftCorner(x.rows(), x.cols()) = x;
    if (y.size()) m.bottomRightCorner(y.rows(), y.cols()) = y;
    return m;
  };
  for (Bidegree x : all) {
    out.set_del(x, blockdiag(a.del(x), b.del(x)));
    out.set_delbar(x, blockdiag(a.delbar(x), b.delbar(x)));
    std::vector<std::string> lab;
    for (const auto* src : {&a, &b}) {
      auto it = src->labels.find(x);
      if (it != src->labels.end()) lab.insert(lab.end(), it->second.begin(), it->second.end());
      else
        for (int i = 0; i < src->dim(x); ++i) lab.push_back("");
    }
    out.labels[x] = lab;
  }
  return out;
}

DoubleComplex change_basis(const DoubleComplex& D, const std::map<Bidegree, MatG>& P) {
  auto get = [&](Bidegree b) {
    auto it = P.find(b);
    return it == P.end() ? identity<Gauss>(D.dim(b)) : it->second;
  };
  std::map<Bidegree, MatG> inv;
  for (Bidegree b : D.support()) inv[b] = inverse<Gauss>(get(b));
  DoubleComplex out;
  for (Bidegree b : D.support()) out.set_dim(b, D.dim(b));
  for (Bidegree b : D.support()) {
    Bidegree r = shift(b, 1, 0), u = shift(b, 0, 1);
    if (D.dim(r)) out.set_del(b, mul<Gauss>(inv[r], mul<Gauss>(D.del(b), get(b))));
    if (D.dim(u)) out.set_delbar(b, mul<Gauss>(inv[u], mul<Gauss>(D.delbar(b), get(b))));
  }
  return out;
}

DoubleComplex truncate(const DoubleComplex& D, int n) {
  DoubleComplex out;
  for (Bidegree b : D.support())
    if (b.first + b.second <= n) out.set_dim(b, D.dim(b));
  for (Bidegree b : out.support()) {
    if (out.dim(shift(b, 1, 0))) out.set_del(b, D.del(b));
    if (out.dim(shift(b, 0, 1))) out.set_delbar(b, D.delbar(b));
    auto it = D.labels.find(b);
    if (it != D.labels.end()) out.labels[b] = it->second;
  }
  return out;
}

namespace {

MatG kron(const MatG& a, const MatG& b) {
  MatG m = zeros<Gauss>(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

// Block layout of (A (x) B)^{p,q}: pairs (alpha, beta) with alpha + beta = (p,q), alpha ascending.
struct TensorLayout {
  std::map<Bidegree, std::vector<std::pair<Bidegree, Bidegree>>> blocks;
  std::map<Bidegree, std::vector<int>> offsets;
  std::map<Bidegree, int> dims;
};

TensorLayout tensor_layout(const DoubleComplex& a, const DoubleComplex& b, std::optional<int> max_total) {
  TensorLayout L;
  for (Bidegree x : a.support())
    for (Bidegree y : b.support()) {
      Bidegree s{x.first + y.first, x.second + y.second};
      if (max_total && s.first + s.second > *max_total) continue;
      L.blocks[s].push_back({x, y});
    }
  for (auto& [s, v] : L.blocks) {
    std::sort(v.begin(), v.end());
    int off = 0;
    for (auto [x, y] : v) {
      L.offsets[s].push_back(off);
      off += a.dim(x) * b.dim(y);
    }
    L.dims[s] = off;
  }
  return L;
}

}  // namespace

DoubleComplex tensor_product(const DoubleComplex& a, const DoubleComplex& b, std::optional<int> max_total) {
  TensorLayout L = tensor_layout(a, b, max_total);
  DoubleComplex out;
  for (const auto& [s, d] : L.dims) out.set_dim(s, d);
  for (const auto& [s, blocks] : L.blocks) {
    for (int dir = 0; dir < 2; ++dir) {
      Bidegree t = dir == 0 ? shift(s, 1, 0) : shift(s, 0, 1);
      if (!out.dim(t)) continue;
      MatG m = zeros<Gauss>(out.dim(t), out.dim(s));
      const auto& tb = L.blocks.at(t);
      auto place = [&](std::pair<Bidegree, Bidegree> target, int src_off, const MatG& blk) {
        auto it = std::find(tb.begin(), tb.end(), target);
        if (it == tb.end() || blk.size() == 0) return;
        const int toff = L.offsets.at(t)[static_cast<std::size_t>(it - tb.begin())];
        m.block(toff, src_off, blk.rows(), blk.cols()) += blk;
      };
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto [x, y] = blocks[i];
        const int off = L.offsets.at(s)[i];
        const Bidegree x2 = dir == 0 ? shift(x, 1, 0) : shift(x, 0, 1);
        const Bidegree y2 = dir == 0 ? shift(y, 1, 0) : shift(y, 0, 1);
        MatG dx = dir == 0 ? a.del(x) : a.delbar(x);
        MatG dy = dir == 0 ? b.del(y) : b.delbar(y);
        if (a.dim(x2)) place({x2, y}, off, kron(dx, identity<Gauss>(b.dim(y))));
        if (b.dim(y2)) {
          MatG k = kron(identity<Gauss>(a.dim(x)), dy);
          if ((x.first + x.second) % 2 != 0) k = -k;
          place({x, y2}, off, k);
        }
      }
      if (dir == 0)
        out.set_del(s, m);
      else
        out.set_delbar(s, m);
    }
    std::vector<std::string> lab;
    for (auto [x, y] : blocks) {
      auto ia = a.labels.find(x);
      auto ib = b.labels.find(y);
      for (int i = 0; i < a.dim(x); ++i)
        for (int j = 0; j < b.dim(y); ++j) {
          std::string la = ia != a.labels.end() ? ia->second[i] : "";
          std::string lb = ib != b.labels.end() ? ib->second[j] : "";
          if (la.empty() || la == "1")
            lab.push_back(lb);
          else if (lb.empty() || lb == "1")
            lab.push_back(la);
          else
            lab.push_back(la + "*" + lb);
        }
    }
    out.labels[s] = lab;
  }
  return out;
}

KunnethReport kunneth_aeppli_check(const DoubleComplex& a, const DoubleComplex& b, int max_total) {
  DoubleComplex ta = truncate(a, max_total), tb = truncate(b, max_total);
  DoubleComplex prod = tensor_product(ta, tb, max_total);
  KunnethReport rep;

  // per factor: Aeppli representatives and the two BC-class maps a -> [del a], a -> [delbar a]
  struct Factor {
    std::map<Bidegree, MatG> reps;
    std::map<Bidegree, MatG> del_cls, delbar_cls;  // columns: BC coordinates
  };
  auto prepare = [&](const DoubleComplex& D) {
    Factor f;
    for (Bidegree x : D.support()) {
      if (x.first + x.second + 2 > max_total) continue;
      MatG R = representatives(D, Flavor::Aeppli, x);
      if (R.cols() == 0) continue;
      f.reps[x] = R;
      for (int dir = 0; dir < 2; ++dir) {
        Bidegree y = dir == 0 ? shift(x, 1, 0) : shift(x, 0, 1);
        MatG img = mul<Gauss>(dir == 0 ? D.del(x) : D.delbar(x), R);
        const int h = D.dim(y) ? cohomology_dim(D, Flavor::BottChern, y) : 0;
        MatG c = zeros<Gauss>(h, R.cols());
        for (Eigen::Index j = 0; j < R.cols() && h > 0; ++j)
          c.col(j) = class_coordinates(D, Flavor::BottChern, y, img.col(j));
        (dir == 0 ? f.del_cls : f.delbar_cls)[x] = c;
      }
    }
    return f;
  };
  Factor fa = prepare(ta), fb = prepare(tb);

  std::set<Bidegree> targets;
  for (Bidegree s : prod.support())
    if (s.first + s.second + 2 <= max_total) targets.insert(s);
  for (Bidegree s : targets) {
    rep.direct[s] = cohomology_dim(prod, Flavor::Aeppli, s);
    // source blocks: H_A^x(a) (x) H_A^y(b), x + y = s
    std::vector<std::pair<Bidegree, Bidegree>> src;
    for (const auto& [x, R] : fa.reps)
      for (const auto& [y, S] : fb.reps)
        if (x.first + y.first == s.first && x.second + y.second == s.second) src.push_back({x, y});
    // target blocks: H_BC^u(a) (x) H_BC^v(b), u + v = s + (1,1), u in {x+(1,0), x+(0,1)}
    std::map<std::pair<Bidegree, Bidegree>, int> tgt_off;
    int tgt_size = 0, src_size = 0;
    auto bc = [](const DoubleComplex& D, Bidegree u) { return D.dim(u) ? cohomology_dim(D, Flavor::BottChern, u) : 0; };
    for (auto [x, y] : src) {
      src_size += static_cast<int>(fa.reps[x].cols() * fb.reps[y].cols());
      for (auto uv : {std::pair{shift(x, 1, 0), shift(y, 0, 1)}, std::pair{shift(x, 0, 1), shift(y, 1, 0)}})
        if (!tgt_off.count(uv)) {
          tgt_off[uv] = tgt_size;
          tgt_size += bc(ta, uv.first) * bc(tb, uv.second);
        }
    }
    MatG Phi = zeros<Gauss>(tgt_size, src_size);
    int col = 0;
    for (auto [x, y] : src) {
      // a (x) b -> (-1)^|a| (del a (x) delbar b - delbar a (x) del b)
      MatG t1 = kron(fa.del_cls[x], fb.delbar_cls[y]);
      MatG t2 = kron(fa.delbar_cls[x], fb.del_cls[y]);
      if ((x.first + x.second) % 2 != 0) {
        t1 = -t1;
        t2 = -t2;
      }
      auto o1 = tgt_off[{shift(x, 1, 0), shift(y, 0, 1)}];
      auto o2 = tgt_off[{shift(x, 0, 1), shift(y, 1, 0)}];
      if (t1.size()) Phi.block(o1, col, t1.rows(), t1.cols()) += t1;
      if (t2.size()) Phi.block(o2, col, t2.rows(), t2.cols()) -= t2;
      col += static_cast<int>(fa.reps[x].cols() * fb.reps[y].cols());
    }
    rep.predicted[s] = src_size - rank<Gauss>(Phi);
    rep.defect[s] = rep.direct[s] - rep.predicted[s];
  }
  return rep;
}

DoubleComplex random_complex(std::uint64_t seed, int max_dim) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 2), pick(0, 3), attempts(3, 12);
  DoubleComplex D;
  auto fits = [&](const std::vector<Bidegree>& spots) {
    std::map<Bidegree, int> extra;
    for (Bidegree b : spots) {
      if (b.first < 0 || b.second < 0 || b.first > 3 || b.second > 3) return false;
      if (D.dim(b) + ++extra[b] > max_dim) return false;
    }
    return true;
  };
  const int n = attempts(rng);
  for (int i = 0; i < n; ++i) {
    ZigzagPiece piece;
    if (coin(rng) == 0) {
      piece.kind = ZigzagPiece::Kind::Square;
      piece.anchor = {pick(rng) % 3, pick(rng) % 3};
    } else {
      // start at a spot inside the box, as a source (even t) or a target (odd t)
      const int p = pick(rng), q = pick(rng);
      if (coin(rng) == 0) {
        piece.band = p + q;
        piece.t0 = 2 * p;
      } else {
        piece.band = p + q - 1;
        piece.t0 = 2 * p - 1;
      }
      piece.t1 = piece.t0 + std::uniform_int_distribution<int>(0, 4)(rng);
    }
    piece.multiplicity = 1;
    if (!fits(piece.spots())) continue;
    D = direct_sum(D, piece_complex(piece));
  }
  // random invertible basis change with entries in {-2..2} + i{-1..1}
  std::uniform_int_distribution<int> re(-2, 2), im(-1, 1);
  std::map<Bidegree, MatG> P;
  for (Bidegree b : D.support()) {
    const int d = D.dim(b);
    for (;;) {
      MatG m(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = Gauss(Surd(re(rng)), Surd(im(rng)));
      if (rank<Gauss>(m) == d) {
        P[b] = m;
        break;
      }
    }
  }
  DoubleComplex out = change_basis(D, P);
  return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json sparse_entries(const DoubleComplex& D, bool bar) {
  nlohmann::json arr = nlohmann::json::array();
  for (Bidegree b : D.support()) {
    MatG m = bar ? D.delbar(b) : D.del(b);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero())
          arr.push_back({b.first, b.second, i, j, to_string(m(i, j).real()), to_string(m(i, j).imag())});
  }
  return arr;
}

}  // namespace

nlohmann::json to_json(const DoubleComplex& D) {
  nlohmann::json j;
  nlohmann::json sup = nlohmann::json::array();
  for (Bidegree b : D.support()) {
    nlohmann::json e = {b.first, b.second, D.dim(b)};
    sup.push_back(e);
  }
  j["support"] = sup;
  j["d1"] = sparse_entries(D, false);
  j["d2"] = sparse_entries(D, true);
  nlohmann::json lab = nlohmann::json::object();
  for (const auto& [b, v] : D.labels) {
    bool any = std::any_of(v.begin(), v.end(), [](const std::string& s) { return !s.empty(); });
    if (any) lab[std::to_string(b.first) + "," + std::to_string(b.second)] = v;
  }
  if (!lab.empty()) j["labels"] = lab;
  return j;
}

DoubleComplex double_complex_from_json(const nlohmann::json& j) {
  DoubleComplex D;
  if (!j.contains("support") || !j["support"].is_array())
    throw std::invalid_argument("double complex JSON needs a 'support' array of [p, q, dim]");
  for (const auto& e : j["support"]) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("support entries are [p, q, dim]");
    D.set_dim({e[0].get<int>(), e[1].get<int>()}, e[2].get<int>());
  }
  for (int bar = 0; bar < 2; ++bar) {
    const char* key = bar ? "d2" : "d1";
    std::map<Bidegree, MatG> mats;
    if (!j.contains(key)) continue;
    for (const auto& e : j[key]) {
      if (!e.is_array() || e.size() < 5)
        throw std::invalid_argument(std::string(key) + " entries are [p, q, row, col, re(, im)]");
      Bidegree b{e[0].get<int>(), e[1].get<int>()};
      Bidegree t = bar ? shift(b, 0, 1) : shift(b, 1, 0);
      auto it = mats.find(b);
      if (it == mats.end()) it = mats.emplace(b, zeros<Gauss>(D.dim(t), D.dim(b))).first;
      const int r = e[2].get<int>(), c = e[3].get<int>();
      if (r < 0 || c < 0 || r >= it->second.rows() || c >= it->second.cols())
        throw std::invalid_argument(std::string(key) + " entry out of range");
      auto num = [](const nlohmann::json& v) { return v.is_string() ? parse_surd(v.get<std::string>()) : Surd(v.get<int>()); };
      it->second(r, c) = Gauss(num(e[4]), e.size() > 5 ? num(e[5]) : Surd(0));
    }
    for (auto& [b, m] : mats) {
      if (bar)
        D.set_delbar(b, m);
      else
        D.set_del(b, m);
    }
  }
  if (j.contains("labels"))
    for (const auto& [k, v] : j["labels"].items()) {
      auto comma = k.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("label keys are \"p,q\"");
      D.labels[{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))}] = v.get<std::vector<std::string>>();
    }
  return D;
}

nlohmann::json to_json(const CohomologyTable& t) {
  nlohmann::json j;
  auto grid = [](const std::map<Bidegree, int>& m) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [b, v] : m)
      if (v) a.push_back({b.first, b.second, v});
    return a;
  };
  j["dolbeault"] = grid(t.dolbeault);
  j["conj_dolbeault"] = grid(t.conj_dolbeault);
  j["bott_chern"] = grid(t.bott_chern);
  j["aeppli"] = grid(t.aeppli);
  nlohmann::json dr = nlohmann::json::object();
  for (const auto& [k, v] : t.de_rham)
    if (v) dr[std::to_string(k)] = v;
  j["de_rham"] = dr;
  return j;
}

std::string text_grid(const CohomologyTable& t) {
  std::ostringstream os;
  int pmax = 0, qmax = 0;
  for (const auto* m : {&t.dolbeault, &t.conj_dolbeault, &t.bott_chern, &t.aeppli})
    for (const auto& [b, v] : *m) {
      pmax = std::max(pmax, b.first);
      qmax = std::max(qmax, b.second);
    }
  for (Flavor f : {Flavor::Dolbeault, Flavor::ConjDolbeault, Flavor::BottChern, Flavor::Aeppli}) {
    os << flavor_name(f) << " (rows q, columns p)\n";
    for (int q = qmax; q >= 0; --q) {
      os << "  q=" << q << " |";
      for (int p = 0; p <= pmax; ++p) os << " " << t.get(f, {p, q});
      os << "\n";
    }
  }
  os << "de_rham:";
  for (const auto& [k, v] : t.de_rham) os << " b" << k << "=" << v;
  os << "\n";
  return os.str();
}

}  // namespace samelson
