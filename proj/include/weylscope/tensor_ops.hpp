#pragma once

#include "weylscope/tensor2.hpp"
#include "weylscope/tensor4.hpp"

namespace weylscope {

// Kulkarni-Nomizu product of symmetric rank-2 tensors:
// (h.k)(x,y,z,t) = h(x,z)k(y,t) + h(y,t)k(x,z) - h(x,t)k(y,z) - h(y,z)k(x,t)
Tensor4 kulkarni_nomizu(const SymBilinear& h, const SymBilinear& k);

// Bianchi map b1 : Lambda^2 x Lambda^2 -> Lambda^3 x Lambda^1,
// (b1 T)(x,y,z,u) = T(x,y,z,u) + T(y,z,x,u) + T(z,x,y,u)
Tensor4 bianchi_map(const Tensor4& t);

// sum_i T(x,i,z,i)
SymBilinear ricci_contraction(const Tensor4& t);

// sum_i ricci(i,i)
double total_trace(const Tensor4& t);

// Component-sum inner products (rank-2 overload lives in tensor2.hpp).
double inner(const Tensor3& a, const Tensor3& b);
double inner(const Tensor4& a, const Tensor4& b);

// Projection of an arbitrary rank-4 array onto pair-antisymmetric tensors
// (antisym in (x,y) and in (z,u)), and symmetrization under pair swap.
Tensor4 antisymmetrize_pairs(const Tensor4& t);
Tensor4 symmetrize_pair_swap(const Tensor4& t);

// Rotate every slot by q: out(a,b,c,d) = T(q a, q b, q c, q d), i.e.
// out(a,b,c,d) = sum T(i,j,k,l) q(i,a) q(j,b) q(k,c) q(l,d).
Tensor4 rotate_all_slots(const Tensor4& t, const Mat& q);
Tensor3 rotate_all_slots(const Tensor3& t, const Mat& q);

// Checks used by the curvature-type wrappers.
double pair_antisym_defect(const Tensor4& t);
double pair_swap_defect(const Tensor4& t);

}  // namespace weylscope
