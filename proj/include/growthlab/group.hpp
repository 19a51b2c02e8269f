#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/field.hpp"
#include "growthlab/matrix.hpp"
#include "growthlab/quadext.hpp"

namespace growthlab {

enum class Family { SL, Sp, SOOdd, SOEvenPlus, SUTwisted };
enum class Embedding { Usual, BlockContragredient };

const char* family_name(Family f);

// One classical-group instance with its embedding data: ambient size n,
// dimension delta, inversion degree iota, a degree bound Delta, and the
// defining form matrix where applicable.
struct GroupSpec {
  Family family;
  unsigned rank = 0;
  Field field;
  Embedding embedding = Embedding::Usual;

  unsigned n = 0;        // ambient matrix size
  unsigned dim = 0;      // delta
  unsigned iota = 0;     // max degree of the inversion map
  BigInt delta_bound;    // upper bound on deg(G)
  Mat form;              // M1 / M2 / M3 for the orthogonal/symplectic cases
  felem su_s = 0;        // nonsquare used by the unitary twist
  unsigned su_n = 0;     // unitary matrix size (ambient is 2*su_n)

  std::string label() const;
};

// Rank/characteristic restrictions follow the definition of the untwisted
// classical families: SL r>=1, Sp r>=2, SO_{2r+1} r>=3 (q odd),
// SO+_{2r} r>=4 (q odd). `relax_rank` lifts the rank floor (not the
// characteristic restriction) so that small instances like Sp_2 and SO_5
// remain available to the Lie-algebra and Cayley experiments.
GroupSpec make_group(Family family, unsigned rank, const Field& field,
                     Embedding embedding = Embedding::Usual, bool relax_rank = false);

// Group over GF(q) in Mat_{2n} whose rational points biject with SU_n(q).
// Entries a+b*zeta of the unitary matrix become 2x2 blocks (a, s*b; b, a).
GroupSpec su_embed(unsigned n, const Field& field);

bool contains(const GroupSpec& spec, const Mat& m);
BigInt group_order(const GroupSpec& spec);

// Symmetric generating set containing e; fixed per family (simple-root
// elements, plus torus generators where unipotents alone generate a proper
// normal subgroup). Closure against group_order is verified in tests.
std::vector<Mat> standard_generators(const GroupSpec& spec);
std::string standard_generator_label(const GroupSpec& spec);

// Lie algebra: linearized defining equations.
bool lie_contains(const GroupSpec& spec, const Mat& x);
Mat bracket(const Field& f, const Mat& x, const Mat& y);
Mat adjoint(const GroupSpec& spec, const Mat& g, const Mat& x);  // g x g^-1
std::vector<Mat> lie_basis(const GroupSpec& spec);               // nullspace basis
unsigned lie_nullity(const GroupSpec& spec);

// Cayley transform lambda(x) = (Id - x)(Id + x)^-1 for Sp/SO, odd q.
Mat cayley(const GroupSpec& spec, const Mat& x);

// diag-block(M, (M^-1)^T) in Mat_{2n}; requires det(M) = 1.
Mat contragredient_embed(const GroupSpec& usual_sl, const Mat& m);

// Unitary embedding helpers.
using QMat = std::vector<QuadExt::Elem>;  // n x n row-major over GF(q^2)
QuadExt su_ext(const GroupSpec& spec);
Mat su_phi(const GroupSpec& spec, const QMat& g);            // Mat_{2n}(F_q)
std::optional<QMat> su_lift(const GroupSpec& spec, const Mat& m);  // shape check

// Diagonal-torus support shared by the varieties/census modules.
std::vector<Mat> torus_points(const GroupSpec& spec);       // T(F_q) exactly
bool torus_shape(const GroupSpec& spec, const Mat& m);      // diagonal (blockwise for SU)
std::vector<Mat> torus_lie_basis(const GroupSpec& spec);    // basis of diag part of g

}  // namespace growthlab
