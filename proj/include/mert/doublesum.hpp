#pragma once

#include "mert/mertens.hpp"

namespace mert {

enum class Method { naive, blocked };

const char* method_name(Method m);

// S(n) = sum over j,k <= n of bracket(n^2, j, k) mu(j) mu(k).
struct DoubleSumResult {
    u64 n = 0;
    i64 s = 0;
    Method method = Method::naive;
    double elapsed_s = 0.0;   // diagnostic only, never part of data output
    u64 inner_blocks = 0;     // constant-quotient blocks visited (blocked method)
};

// Direct transcription over all squarefree pairs; the permanent oracle for
// every faster evaluation path.
DoubleSumResult double_sum_naive(u64 n);
DoubleSumResult double_sum_naive(u64 n, const MoebiusBlock& mu);

// Same value in O(n^1.5): for each squarefree j the inner sum runs over
// maximal blocks where floor(n^2/j/k) is constant; odd quotients contribute
// a Mertens-table range sum. table must cover [1, n].
DoubleSumResult double_sum_blocked(u64 n, const MertensTable& table, unsigned threads = 1);

// Residual of the exact identity
//   M(n^2) - 2 M(floor(n^2/2)) = -S(n) - 2 M(n),
// zero for every n >= 2 (the two sides differ at n = 1, which is rejected).
i64 identity_residual(u64 n, Method method = Method::blocked);

// Batched form: one streaming Mertens pass answers the n, n^2/2 and n^2
// queries for every requested n.
std::vector<i64> identity_residuals(std::span<const u64> ns, Method method,
                                    const StreamConfig& cfg = {});

}  // namespace mert
