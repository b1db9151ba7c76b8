#include "canform/identities.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace canform {

namespace {

Rational factorial(int k) {
    Rational r(1);
    for (int i = 2; i <= k; ++i) r = r * Rational(i);
    return r;
}

Rational minus_two_pow(int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r = r * Rational(-2);
    return r;
}

bool has_repeat(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

std::vector<int> interleave(const PairSet& P) {
    std::vector<int> t;
    t.reserve(2 * P.size());
    for (const auto& pr : P) {
        t.push_back(pr.first);
        t.push_back(pr.second);
    }
    return t;
}

}  // namespace

MultiPoly permanent_poly(const std::vector<int>& p, const std::vector<int>& q,
                         const PolyMatrix& B) {
    if (static_cast<int>(p.size()) != B.rows() || static_cast<int>(q.size()) != B.cols())
        throw std::invalid_argument("permanent_poly: weight length mismatch");
    long sp = 0, sq = 0;
    for (int v : p) {
        if (v < 0) return MultiPoly();
        sp += v;
    }
    for (int v : q) {
        if (v < 0) return MultiPoly();
        sq += v;
    }
    if (sp != sq) throw std::invalid_argument("permanent_poly: unbalanced weights");
    if (sp == 0) return MultiPoly(1);
    std::vector<long> pl(p.begin(), p.end()), ql(q.begin(), q.end());
    return poly_perm(B.weighted_selection(pl, ql));
}

PolyMatrix phi_matrix(const TypeNu& nu, const PolyMatrix& B) {
    int n = nu.rank();
    if (B.rows() != n || B.cols() != n)
        throw std::invalid_argument("phi_matrix: matrix size must equal the rank");
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("phi_matrix: nu must have 2n-1 pairs");
    const std::vector<int>& p = nu.p();
    const std::vector<int>& q = nu.q();
    std::vector<int> pm1(n);
    for (int a = 0; a < n; ++a) pm1[a] = p[a] - 1;
    PolyMatrix Phi(n, n);
    std::vector<int> rw(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            int factor = q[j - 1] + (i == j ? 1 : 0) - 1;
            if (factor == 0) continue;
            for (int a = 0; a < n; ++a) rw[a] = q[a] - 1;
            rw[i - 1] += 1;
            rw[j - 1] -= 1;
            MultiPoly P = permanent_poly(rw, pm1, B);
            if (P.is_zero()) continue;
            Phi.at(i - 1, j - 1) = P * Rational(factor);
        }
    }
    return Phi;
}

IdentityWitness theorem1_check(const TypeNu& nu, const PolyMatrix& B) {
    int n = nu.rank();
    if (B.rows() != n || B.cols() != n)
        throw std::invalid_argument("theorem1_check: matrix size must equal the rank");
    GenTablePtr t = omega_gen_table(n);
    FormMatrix Omega(n, n, t);
    for (const auto& [i, j] : nu.pairs())
        Omega.at(i - 1, j - 1) = ExtForm::generator((i - 1) * n + (j - 1), t);
    FormMatrix lhs = form_matrix_power(B, Omega, 2 * n - 1);
    MultiPoly detB = poly_det(B);
    PolyMatrix Phi = phi_matrix(nu, B);
    ExtForm om = omega_form(nu, t);
    FormMatrix rhs(n, n, t);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rhs.at(i, j) = om * (Phi.at(i, j) * detB);
    IdentityWitness w;
    w.ok = (lhs == rhs);
    if (!w.ok) w.detail = "lhs = " + lhs.str() + "\nrhs = " + rhs.str();
    return w;
}

namespace {

void subsets_rec(const std::vector<int>& pool, size_t r, size_t start,
                 std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i + (r - cur.size()) <= pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_rec(pool, r, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(const std::vector<int>& pool, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(pool, static_cast<size_t>(r), 0, cur, out);
    return out;
}

// Every element of D^k_m is produced exactly once: the block containing the
// smallest remaining element is chosen first, and that element is assigned
// to the I side of its block.
void dk_rec(const std::vector<int>& remaining, int blocks_left,
            std::vector<std::pair<std::vector<int>, std::vector<int>>>& cur,
            std::vector<DkPartition>& out) {
    if (remaining.empty()) {
        if (blocks_left == 0) out.push_back(DkPartition{cur});
        return;
    }
    if (blocks_left == 0 || static_cast<int>(remaining.size()) < 2 * blocks_left) return;
    int anchor = remaining[0];
    std::vector<int> rest(remaining.begin() + 1, remaining.end());
    int max_half = (static_cast<int>(remaining.size()) - 2 * (blocks_left - 1)) / 2;
    for (int half = 1; half <= max_half; ++half) {
        for (const auto& body : subsets(rest, 2 * half - 1)) {
            for (const auto& ipart : subsets(body, half - 1)) {
                std::vector<int> I{anchor};
                I.insert(I.end(), ipart.begin(), ipart.end());
                std::vector<int> J;
                for (int v : body)
                    if (!std::binary_search(ipart.begin(), ipart.end(), v)) J.push_back(v);
                std::vector<int> next;
                for (int v : rest)
                    if (!std::binary_search(body.begin(), body.end(), v)) next.push_back(v);
                cur.emplace_back(std::move(I), std::move(J));
                dk_rec(next, blocks_left - 1, cur, out);
                cur.pop_back();
            }
        }
    }
}

}  // namespace

std::vector<DkPartition> enumerate_dk(int m, int k) {
    if (m < 0 || m % 2 != 0) throw std::invalid_argument("enumerate_dk: m must be even");
    if (k < 1) throw std::invalid_argument("enumerate_dk: k must be positive");
    std::vector<DkPartition> out;
    if (2 * k > m) return out;
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> cur;
    dk_rec(all, k, cur, out);
    return out;
}

std::vector<int> pairset_tuple(const PairSet& E, const std::vector<int>& I) {
    std::vector<int> t;
    t.reserve(2 * I.size());
    for (int i : I) {
        if (i < 1 || i > static_cast<int>(E.size()))
            throw std::out_of_range("pairset_tuple: index outside E");
        t.push_back(E[i - 1].first);
        t.push_back(E[i - 1].second);
    }
    return t;
}

MultiPoly sigma_poly(const PolyMatrix& B, const PairSet& E) {
    if (!B.is_symmetric()) throw std::invalid_argument("sigma_poly: B must be symmetric");
    int m = static_cast<int>(E.size());
    if (m % 2 != 0) throw std::invalid_argument("sigma_poly: |E| must be even");
    if (m == 0) return MultiPoly(1);
    MultiPoly acc;
    for (int k = 1; 2 * k <= m; ++k) {
        Rational pref = minus_two_pow(k) * factorial(k);
        MultiPoly ksum;
        for (const auto& part : enumerate_dk(m, k)) {
            MultiPoly prod(1);
            for (const auto& blk : part.blocks) {
                std::vector<int> rows = pairset_tuple(E, blk.first);
                std::vector<int> cols = pairset_tuple(E, blk.second);
                if (has_repeat(rows) || has_repeat(cols)) {
                    prod = MultiPoly();
                    break;
                }
                prod *= poly_det(B.submatrix(rows, cols));
                if (prod.is_zero()) break;
            }
            ksum += prod;
        }
        acc += ksum * pref;
    }
    return acc;
}

MultiPoly antisym_perm_bruteforce(const PolyMatrix& B, const std::vector<int>& S,
                                  const std::vector<int>& T) {
    if (S.size() != T.size())
        throw std::invalid_argument("antisym_perm_bruteforce: |S| != |T|");
    int m = static_cast<int>(S.size());
    if (m == 0) return MultiPoly(1);
    if (m > 16) throw std::invalid_argument("antisym_perm_bruteforce: m too large");
    MultiPoly acc;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> rows(S), cols(T);
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) std::swap(rows[i], cols[i]);
        MultiPoly p = poly_perm(B.submatrix(rows, cols));
        if (__builtin_popcount(mask) % 2)
            acc -= p;
        else
            acc += p;
    }
    return acc;
}

namespace {

// Shared engine for the two pi_{i,j} recursions. The operator
// pi_{i,j} = (1 - g_i)(1 - g_j) expands into four summands indexed by
// (a,b): g_i applied when a, g_j when b, with character (-1)^(a+b).
// When i == j the two toggles compose on the same pair, which realises
// pi_i applied twice.
template <typename Reduce>
MultiPoly pi_recursion(const PolyMatrix& B, const PairSet& pairs, const Reduce& reduce) {
    int m = static_cast<int>(pairs.size());
    MultiPoly acc;
    for (int i = 2; i <= m; ++i) {
        for (int j = 2; j <= m; ++j) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    PairSet P = pairs;
                    if (a) std::swap(P[i - 1].first, P[i - 1].second);
                    if (b) std::swap(P[j - 1].first, P[j - 1].second);
                    std::vector<int> r{P[0].first, P[0].second};
                    std::vector<int> c{P[i - 1].first, P[j - 1].second};
                    MultiPoly d = poly_det(B.submatrix(r, c));
                    if (d.is_zero()) continue;
                    MultiPoly sub = reduce(P, i, j);
                    if (sub.is_zero()) continue;
                    MultiPoly term = d * sub;
                    if ((a + b) % 2)
                        acc -= term;
                    else
                        acc += term;
                }
            }
        }
    }
    return acc * Rational(-1, 2);
}

MultiPoly antisym_rec_impl(const PolyMatrix& B, const PairSet& pairs) {
    int m = static_cast<int>(pairs.size());
    if (m == 0) return MultiPoly(1);
    if (m % 2 != 0) return MultiPoly();
    return pi_recursion(B, pairs, [&](const PairSet& P, int i, int j) {
        PairSet next;
        next.reserve(P.size() - 2);
        for (int k = 1; k < static_cast<int>(P.size()); ++k) {
            if (k == i - 1) continue;
            std::pair<int, int> pr = P[k];
            if (k == j - 1) pr.second = P[i - 1].second;
            next.push_back(pr);
        }
        return antisym_rec_impl(B, next);
    });
}

MultiPoly sigma_rec_impl(const PolyMatrix& B, const PairSet& E) {
    int m = static_cast<int>(E.size());
    if (m == 0) return MultiPoly(1);
    return pi_recursion(B, E, [&](const PairSet& P, int i, int j) {
        PairSet next;
        next.reserve(P.size() - 2);
        if (i == j) {
            for (int k = 1; k < static_cast<int>(P.size()); ++k)
                if (k != i - 1) next.push_back(P[k]);
        } else {
            for (int k = 1; k < static_cast<int>(P.size()); ++k)
                if (k != i - 1 && k != j - 1) next.push_back(P[k]);
            next.emplace_back(P[j - 1].first, P[i - 1].second);
        }
        return sigma_rec_impl(B, next);
    });
}

}  // namespace

MultiPoly antisym_perm_recursive(const PolyMatrix& B, const std::vector<int>& S,
                                 const std::vector<int>& T) {
    if (S.size() != T.size())
        throw std::invalid_argument("antisym_perm_recursive: |S| != |T|");
    if (!B.is_symmetric())
        throw std::invalid_argument("antisym_perm_recursive: B must be symmetric");
    PairSet pairs;
    pairs.reserve(S.size());
    for (size_t i = 0; i < S.size(); ++i) pairs.emplace_back(S[i], T[i]);
    return antisym_rec_impl(B, pairs);
}

MultiPoly sigma_recursive(const PolyMatrix& B, const PairSet& E) {
    if (!B.is_symmetric())
        throw std::invalid_argument("sigma_recursive: B must be symmetric");
    if (E.size() % 2 != 0)
        throw std::invalid_argument("sigma_recursive: |E| must be even");
    return sigma_rec_impl(B, E);
}

MultiPoly det_two_row_expansion(const PolyMatrix& B, const PairSet& E, const PairSet& F) {
    if (E.size() != F.size())
        throw std::invalid_argument("det_two_row_expansion: |E| != |F|");
    int q = static_cast<int>(E.size());
    if (q == 0) return MultiPoly(1);
    PairSet Erest(E.begin() + 1, E.end());
    std::vector<int> r1{E[0].first, E[0].second};
    MultiPoly acc;
    for (int j = 1; j <= q; ++j) {
        std::vector<int> c{F[j - 1].first, F[j - 1].second};
        MultiPoly d = poly_det(B.submatrix(r1, c));
        if (d.is_zero()) continue;
        PairSet Frest;
        Frest.reserve(q - 1);
        for (int k = 1; k <= q; ++k)
            if (k != j) Frest.push_back(F[k - 1]);
        acc += d * poly_det(B.submatrix(interleave(Erest), interleave(Frest)));
    }
    for (int i = 1; i <= q; ++i) {
        for (int j = i + 1; j <= q; ++j) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    PairSet P = F;
                    if (a) std::swap(P[i - 1].first, P[i - 1].second);
                    if (b) std::swap(P[j - 1].first, P[j - 1].second);
                    std::vector<int> c{P[i - 1].first, P[j - 1].second};
                    MultiPoly d = poly_det(B.submatrix(r1, c));
                    if (d.is_zero()) continue;
                    PairSet Fmod;
                    Fmod.reserve(q - 1);
                    for (int k = 1; k <= q; ++k) {
                        if (k == j) continue;
                        if (k == i)
                            Fmod.emplace_back(P[j - 1].first, P[i - 1].second);
                        else
                            Fmod.push_back(P[k - 1]);
                    }
                    MultiPoly term =
                        d * poly_det(B.submatrix(interleave(Erest), interleave(Fmod)));
                    // the cross sum enters with an overall minus sign
                    if ((a + b) % 2)
                        acc += term;
                    else
                        acc -= term;
                }
            }
        }
    }
    return acc;
}

ExtForm symmetric_trace(const TypeNu& nu, const PolyMatrix& B) {
    int n = nu.rank();
    if (B.rows() != n || B.cols() != n)
        throw std::invalid_argument("symmetric_trace: matrix size must equal the rank");
    if (!B.is_symmetric())
        throw std::invalid_argument("symmetric_trace: B must be symmetric");
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("symmetric_trace: nu must have 2n-1 pairs");
    PairSet offdiag;
    for (const auto& [i, j] : nu.pairs()) {
        if (i > j) throw std::invalid_argument("symmetric_trace: nu must be upper-triangular");
        if (i != j) offdiag.emplace_back(i, j);
    }
    for (int i = 1; i <= n; ++i)
        if (!nu.contains(i, i))
            throw std::invalid_argument("symmetric_trace: nu must contain the diagonal");
    GenTablePtr t = omega_gen_table(n);
    if (n % 2 == 0) return ExtForm::zero(t);
    MultiPoly coeff = poly_det(B) * sigma_poly(B, offdiag) * Rational(2 * n - 1);
    return omega_form(nu, t) * coeff;
}

int jacobi_sign(const std::vector<int>& I) {
    long sum = 0;
    int inversions = 0;
    for (size_t a = 0; a < I.size(); ++a) {
        sum += I[a];
        for (size_t b = a + 1; b < I.size(); ++b) {
            if (I[a] == I[b]) return 0;
            if (I[a] > I[b]) ++inversions;
        }
    }
    return ((sum + inversions) % 2 == 0) ? 1 : -1;
}

IdentityWitness jacobi_minor_check(const RatMatrix& A, const std::vector<int>& I,
                                   const std::vector<int>& J) {
    if (A.rows() != A.cols()) throw std::invalid_argument("jacobi_minor_check: A not square");
    if (I.size() != J.size()) throw std::invalid_argument("jacobi_minor_check: |I| != |J|");
    int n = A.rows();
    Rational detA = A.det();
    if (detA.is_zero()) throw std::invalid_argument("jacobi_minor_check: A singular");
    Rational lhs = A.inverse().submatrix(I, J).det();
    int sI = jacobi_sign(I), sJ = jacobi_sign(J);
    Rational rhs;
    if (sI != 0 && sJ != 0) {
        Rational minor = (static_cast<int>(J.size()) == n)
                             ? Rational(1)
                             : A.minor_deleting(J, I).det();
        rhs = Rational(sI * sJ) * minor / detA;
    }
    IdentityWitness w;
    w.ok = (lhs == rhs);
    if (!w.ok) w.detail = "lhs = " + lhs.str() + ", rhs = " + rhs.str();
    return w;
}

MultiPoly qk_poly(const PolyMatrix& A, const PairSet& E, int k) {
    int m = static_cast<int>(E.size());
    int n = A.rows();
    MultiPoly acc;
    for (const auto& part : enumerate_dk(m, k)) {
        MultiPoly prod(1);
        int sign = 1;
        for (const auto& blk : part.blocks) {
            std::vector<int> rows = pairset_tuple(E, blk.first);
            std::vector<int> cols = pairset_tuple(E, blk.second);
            int sr = jacobi_sign(rows), sc = jacobi_sign(cols);
            if (sr == 0 || sc == 0) {
                prod = MultiPoly();
                break;
            }
            sign *= sr * sc;
            if (static_cast<int>(rows.size()) == n) continue;  // empty minor
            prod *= poly_det(A.minor_deleting(rows, cols));
            if (prod.is_zero()) break;
        }
        if (sign < 0) prod *= Rational(-1);
        acc += prod;
    }
    return acc;
}

std::vector<CanonicalTerm> canonical_form_symmetric(const PolyMatrix& A) {
    int n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("canonical_form_symmetric: A not square");
    if (!A.is_symmetric())
        throw std::invalid_argument("canonical_form_symmetric: A must be symmetric");
    std::vector<CanonicalTerm> terms;
    if (n % 2 == 0) return terms;
    int m = n - 1;
    if (m == 0) return terms;
    std::vector<std::pair<int, int>> support;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!A.at(i - 1, j - 1).is_zero()) support.emplace_back(i, j);
    if (static_cast<int>(support.size()) < m) return terms;
    std::vector<int> idx(support.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rational front(2 * n - 1);
    for (const auto& pick : subsets(idx, m)) {
        PairSet E;
        E.reserve(m);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= n; ++i) pairs.emplace_back(i, i);
        for (int s : pick) {
            E.push_back(support[s]);
            pairs.push_back(support[s]);
        }
        TypeNu nu(n, pairs);
        if (omega_sign(nu) == 0) continue;
        for (int k = 1; 2 * k <= m; ++k) {
            MultiPoly Q = qk_poly(A, E, k);
            if (Q.is_zero()) continue;
            terms.push_back({E, k, Q * (front * minus_two_pow(k) * factorial(k))});
        }
    }
    return terms;
}

FormMatrix laplacian_differential(const LaplacianMatrix& L, int chart_edge,
                                  const GenTablePtr& dx_table) {
    int h = L.mat.rows();
    int edges = static_cast<int>(L.vars->size());
    if (static_cast<int>(dx_table->size()) != edges)
        throw std::invalid_argument("laplacian_differential: table size mismatch");
    FormMatrix D(h, h, dx_table);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) {
            ExtForm f = ExtForm::zero(dx_table);
            for (const auto& [exps, c] : L.mat.at(i, j).terms()) {
                int var = -1;
                for (size_t a = 0; a < exps.size(); ++a) {
                    if (exps[a] == 1 && var < 0) {
                        var = static_cast<int>(a);
                    } else if (exps[a] != 0) {
                        throw std::invalid_argument(
                            "laplacian_differential: entries must be linear");
                    }
                }
                if (var < 0 || var == chart_edge - 1) continue;
                f += ExtForm::generator(var, dx_table) * c;
            }
            D.at(i, j) = f;
        }
    }
    return D;
}

GraphCanonicalForm canonical_form_graph(const Graph& g, const std::vector<int>& tree,
                                        int chart_edge) {
    int n = g.loop_number();
    if (g.edge_count() != 2 * n)
        throw std::invalid_argument("canonical_form_graph: needs exactly 2h edges");
    if (std::find(tree.begin(), tree.end(), chart_edge) == tree.end())
        throw std::invalid_argument("canonical_form_graph: chart edge must lie in the tree");
    CycleBasis basis = cycle_basis_from_tree(g, tree);
    LaplacianMatrix L = laplacian(g, basis);
    PolyMatrix A = L.chart(chart_edge, Rational(1));

    GraphCanonicalForm out;
    out.n = n;
    out.chart = chart_edge;
    out.psi = poly_det(A);
    if (n % 2 == 0) {
        out.text = "0";
        return out;
    }

    int edges = g.edge_count();
    GenTablePtr dxt = dx_gen_table(edges);
    FormMatrix dL = laplacian_differential(L, chart_edge, dxt);
    uint64_t full_mask = 0;
    for (int e = 1; e <= edges; ++e)
        if (e != chart_edge) full_mask |= uint64_t{1} << (e - 1);

    std::map<int, MultiPoly> byk;
    std::vector<CanonicalTerm> terms = canonical_form_symmetric(A);
    PairSet last_E;
    Rational last_c;
    bool have_last = false;
    for (const auto& term : terms) {
        if (!have_last || term.E != last_E) {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 1; i <= n; ++i) pairs.emplace_back(i, i);
            for (const auto& pr : term.E) pairs.push_back(pr);
            TypeNu nu(n, pairs);
            ExtForm wedge = ExtForm::scalar(MultiPoly(omega_sign(nu)), dxt);
            for (const auto& [i, j] : nu.pairs()) wedge = wedge * dL.at(i - 1, j - 1);
            last_E = term.E;
            have_last = true;
            last_c = Rational(0);
            if (!wedge.is_zero()) {
                if (wedge.terms().size() != 1)
                    throw std::logic_error("canonical_form_graph: non-monomial top cell");
                const auto& [mask, coeff] = *wedge.terms().begin();
                if (mask != full_mask)
                    throw std::logic_error("canonical_form_graph: unexpected wedge support");
                last_c = coeff.constant_value();
            }
        }
        if (last_c.is_zero()) continue;
        byk[term.k] += term.coeff * last_c;
    }

    std::string text;
    for (const auto& [k, N] : byk) {
        if (N.is_zero()) continue;
        out.numerators.emplace_back(k, N);
        std::string num = N.str();
        bool neg = false;
        if (N.term_count() > 1) {
            num = "(" + num + ")";
        } else if (!num.empty() && num[0] == '-') {
            neg = true;
            num = num.substr(1);
        }
        if (text.empty())
            text += neg ? "-" : "";
        else
            text += neg ? " - " : " + ";
        text += num + "/Psi^" + std::to_string(k + 1);
    }
    out.text = text.empty() ? "0" : text;
    return out;
}

ExtForm canonical_form_direct_at_point(const Graph& g, const std::vector<int>& tree,
                                       int chart_edge, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != g.edge_count())
        throw std::invalid_argument("canonical_form_direct_at_point: point size mismatch");
    int n = g.loop_number();
    CycleBasis basis = cycle_basis_from_tree(g, tree);
    LaplacianMatrix L = laplacian(g, basis);
    std::vector<Rational> values = x;
    values[chart_edge - 1] = Rational(1);
    RatMatrix Aval = RatMatrix::eval(L.mat, values);
    RatMatrix Binv = Aval.inverse();
    PolyMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B.at(i, j) = MultiPoly(Binv.at(i, j));
    GenTablePtr dxt = dx_gen_table(g.edge_count());
    FormMatrix dL = laplacian_differential(L, chart_edge, dxt);
    return form_matrix_power(B, dL, 2 * n - 1).trace();
}

}  // namespace canform
