#include "canform/typenu.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace canform {

TypeNu::TypeNu(int rank, std::vector<std::pair<int, int>> pairs)
    : rank_(rank), pairs_(std::move(pairs)), p_(rank, 0), q_(rank, 0) {
    if (rank_ < 1) throw std::invalid_argument("TypeNu: rank must be positive");
    std::sort(pairs_.begin(), pairs_.end());
    if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
        throw std::invalid_argument("TypeNu: repeated pair");
    for (const auto& [i, j] : pairs_) {
        if (i < 1 || i > rank_ || j < 1 || j > rank_)
            throw std::invalid_argument("TypeNu: pair index out of range");
        ++p_[i - 1];
        ++q_[j - 1];
    }
}

bool TypeNu::contains(int i, int j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(i, j));
}

TypeNu TypeNu::without(int i, int j) const {
    auto ps = pairs_;
    auto it = std::find(ps.begin(), ps.end(), std::make_pair(i, j));
    if (it == ps.end()) throw std::invalid_argument("TypeNu::without: pair absent");
    ps.erase(it);
    return TypeNu(rank_, std::move(ps));
}

TypeNu TypeNu::with(int i, int j) const {
    auto ps = pairs_;
    ps.emplace_back(i, j);
    return TypeNu(rank_, std::move(ps));
}

std::string TypeNu::str() const {
    std::ostringstream out;
    out << "{";
    for (size_t k = 0; k < pairs_.size(); ++k) {
        if (k) out << ",";
        out << "(" << pairs_[k].first << "," << pairs_[k].second << ")";
    }
    out << "}";
    return out.str();
}

size_t TypeNu::hash_value() const {
    size_t h = std::hash<int>()(rank_);
    for (const auto& [i, j] : pairs_)
        h = h * 1000003u + static_cast<size_t>(i * 131 + j);
    return h;
}

WeightVectors weight(const TypeNu& nu) { return WeightVectors{nu.p(), nu.q()}; }

std::vector<std::vector<int>> incidence_matrix(const TypeNu& nu) {
    int n = nu.rank();
    std::vector<std::vector<int>> M(nu.size(), std::vector<int>(2 * n, 0));
    for (int k = 0; k < nu.size(); ++k) {
        auto [i, j] = nu.pairs()[k];
        M[k][i - 1] = -1;
        M[k][n + j - 1] = 1;
    }
    return M;
}

namespace {

// Integer determinant by fraction-free elimination; the inputs are tiny
// incidence minors so long long never overflows.
long long int_det(std::vector<std::vector<long long>> m) {
    int n = static_cast<int>(m.size());
    long long prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

int omega_sign(const TypeNu& nu, int deleted_column) {
    int n = nu.rank();
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("omega_sign: type must have 2n-1 pairs");
    if (deleted_column < 1 || deleted_column > 2 * n)
        throw std::invalid_argument("omega_sign: deleted column out of range");
    auto M = incidence_matrix(nu);
    std::vector<std::vector<long long>> sub(nu.size());
    for (int r = 0; r < nu.size(); ++r)
        for (int c = 0; c < 2 * n; ++c)
            if (c != deleted_column - 1) sub[r].push_back(M[r][c]);
    long long det = int_det(std::move(sub));
    int par = (n * (n - 1) / 2 + deleted_column - 1) % 2;
    return static_cast<int>(par ? -det : det);
}

int omega_sign(const TypeNu& nu) { return omega_sign(nu, 2 * nu.rank()); }

namespace {

int gen_index(int n, int i, int j) { return (i - 1) * n + (j - 1); }

ExtForm pair_generator(const TypeNu& nu, int i, int j, const GenTablePtr& table) {
    return ExtForm::generator(gen_index(nu.rank(), i, j), table);
}

}  // namespace

ExtForm omega_form(const TypeNu& nu, GenTablePtr table) {
    int n = nu.rank();
    if (static_cast<int>(table->size()) != n * n)
        throw std::invalid_argument("omega_form: table does not match rank");
    int s = omega_sign(nu);
    if (s == 0) return ExtForm::zero(table);
    uint64_t mask = 0;
    for (const auto& [i, j] : nu.pairs()) mask |= uint64_t(1) << gen_index(n, i, j);
    // lex pair order coincides with ascending generator index, so the wedge
    // carries no extra reordering sign
    return ExtForm::monomial(table, mask, MultiPoly(Rational(s)));
}

ExtForm omega_form(const TypeNu& nu) { return omega_form(nu, omega_gen_table(nu.rank())); }

OmegaExpansion omega_expand_recursive(const TypeNu& nu) {
    int n = nu.rank();
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("omega_expand_recursive: type must have 2n-1 pairs");

    OmegaExpansion out;
    // active row/column labels of the shrinking matrix, 1-based positions
    // inside these vectors drive the (-1)^(c+r) signs
    std::vector<int> rows(n), cols(n);
    for (int i = 0; i < n; ++i) rows[i] = cols[i] = i + 1;
    std::vector<std::pair<int, int>> live(nu.pairs().begin(), nu.pairs().end());

    int sign = 1;
    while (rows.size() > 1) {
        // column with a single entry
        int c_pos = -1, c_label = 0, top_row = 0;
        for (size_t c = 0; c < cols.size() && c_pos < 0; ++c) {
            int count = 0, row_of = 0;
            for (const auto& [i, j] : live)
                if (j == cols[c]) {
                    ++count;
                    row_of = i;
                }
            if (count == 1) {
                c_pos = static_cast<int>(c) + 1;
                c_label = cols[c];
                top_row = row_of;
            }
        }
        if (c_pos < 0) return OmegaExpansion{};

        // row with a single entry once column c is gone
        int r_pos = -1, r_label = 0, col_of = 0;
        for (size_t r = 0; r < rows.size() && r_pos < 0; ++r) {
            int count = 0, jj = 0;
            for (const auto& [i, j] : live)
                if (i == rows[r] && j != c_label) {
                    ++count;
                    jj = j;
                }
            if (count == 1) {
                r_pos = static_cast<int>(r) + 1;
                r_label = rows[r];
                col_of = jj;
            }
        }
        if (r_pos < 0) return OmegaExpansion{};

        if ((c_pos + r_pos) % 2) sign = -sign;
        out.chain.emplace_back(top_row, c_label);
        out.chain.emplace_back(r_label, col_of);
        live.erase(std::find(live.begin(), live.end(), std::make_pair(top_row, c_label)));
        live.erase(std::find(live.begin(), live.end(), std::make_pair(r_label, col_of)));
        rows.erase(std::find(rows.begin(), rows.end(), r_label));
        cols.erase(std::find(cols.begin(), cols.end(), c_label));
    }
    // rank-1 base case: omega_{(i,j)} = w_ij
    out.chain.push_back(live.front());
    out.sign = sign;
    return out;
}

ExtForm omega_form_recursive(const TypeNu& nu, GenTablePtr table) {
    OmegaExpansion ex = omega_expand_recursive(nu);
    ExtForm acc = ExtForm::scalar(MultiPoly(Rational(ex.sign)), table);
    for (const auto& [i, j] : ex.chain) acc = acc * pair_generator(nu, i, j, table);
    return acc;
}

std::vector<TypeNu> enumerate_types(int n, int size) {
    std::vector<std::pair<int, int>> all;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) all.emplace_back(i, j);
    int total = n * n;
    if (size < 0 || size > total)
        throw std::invalid_argument("enumerate_types: bad size");

    std::vector<TypeNu> out;
    std::vector<int> idx(size);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == size) {
            std::vector<std::pair<int, int>> ps;
            for (int k : idx) ps.push_back(all[k]);
            out.emplace_back(n, std::move(ps));
            return;
        }
        for (int k = start; k <= total - (size - depth); ++k) {
            idx[depth] = k;
            rec(k + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<TypeNu> enumerate_types(int n) { return enumerate_types(n, 2 * n - 1); }

ExtForm isotypical_project(const ExtForm& f, const TypeNu& nu) {
    int n = nu.rank();
    if (static_cast<int>(f.table().size()) != n * n)
        throw std::invalid_argument("isotypical_project: table does not match rank");
    uint64_t mask = 0;
    for (const auto& [i, j] : nu.pairs()) mask |= uint64_t(1) << gen_index(n, i, j);
    return f.projected_to(mask);
}

FormMatrix isotypical_project(const FormMatrix& F, const TypeNu& nu) {
    int n = nu.rank();
    if (static_cast<int>(F.table_ptr()->size()) != n * n)
        throw std::invalid_argument("isotypical_project: table does not match rank");
    uint64_t mask = 0;
    for (const auto& [i, j] : nu.pairs()) mask |= uint64_t(1) << gen_index(n, i, j);
    return F.projected_to(mask);
}

}  // namespace canform
