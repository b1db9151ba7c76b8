#include "canform/extform.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace canform {

GenTablePtr make_gen_table(std::vector<std::string> names) {
    if (names.size() > 64)
        throw std::invalid_argument("make_gen_table: more than 64 generators");
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("make_gen_table: duplicate generator " + names[i]);
    return std::make_shared<const GenTable>(std::move(names));
}

GenTablePtr omega_gen_table(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            names.push_back("w" + std::to_string(i) + std::to_string(j));
    return make_gen_table(std::move(names));
}

GenTablePtr dx_gen_table(int count) {
    std::vector<std::string> names;
    for (int i = 1; i <= count; ++i) names.push_back("dx" + std::to_string(i));
    return make_gen_table(std::move(names));
}

namespace {
const GenTablePtr& empty_gen_table() {
    static const GenTablePtr t = std::make_shared<const GenTable>();
    return t;
}

// Parity of inversions when merging sorted monomials a, b (disjoint masks):
// for each generator j in b, count generators of a with larger index.
int merge_sign(uint64_t a, uint64_t b) {
    int inversions = 0;
    uint64_t bb = b;
    while (bb) {
        int j = __builtin_ctzll(bb);
        bb &= bb - 1;
        if (j < 63) inversions += __builtin_popcountll(a >> (j + 1));
    }
    return (inversions % 2) ? -1 : 1;
}
}  // namespace

ExtForm::ExtForm() : table_(empty_gen_table()) {}

ExtForm ExtForm::zero(GenTablePtr t) {
    ExtForm f;
    f.table_ = std::move(t);
    return f;
}

ExtForm ExtForm::scalar(const MultiPoly& c, GenTablePtr t) {
    ExtForm f = zero(std::move(t));
    if (!c.is_zero()) f.terms_.emplace(0, c);
    return f;
}

ExtForm ExtForm::generator(int index, GenTablePtr t) {
    ExtForm f = zero(std::move(t));
    if (index < 0 || static_cast<size_t>(index) >= f.table_->size())
        throw std::out_of_range("ExtForm::generator: index out of range");
    f.terms_.emplace(uint64_t{1} << index, MultiPoly(1));
    return f;
}

ExtForm ExtForm::monomial(GenTablePtr t, uint64_t mask, const MultiPoly& c) {
    ExtForm f = zero(std::move(t));
    if (f.table_->size() < 64 && (mask >> f.table_->size()) != 0)
        throw std::out_of_range("ExtForm::monomial: mask beyond table");
    if (!c.is_zero()) f.terms_.emplace(mask, c);
    return f;
}

int ExtForm::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, __builtin_popcountll(m));
    return d;
}

bool ExtForm::is_homogeneous() const {
    int d = -2;
    for (const auto& [m, c] : terms_) {
        int k = __builtin_popcountll(m);
        if (d == -2) d = k;
        else if (d != k) return false;
    }
    return true;
}

ExtForm ExtForm::component(int deg) const {
    ExtForm f = zero(table_);
    for (const auto& [m, c] : terms_)
        if (__builtin_popcountll(m) == deg) f.terms_.emplace(m, c);
    return f;
}

MultiPoly ExtForm::coeff(uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? MultiPoly() : it->second;
}

void ExtForm::add_term(uint64_t mask, const MultiPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {
void require_same_table(const ExtForm& a, const ExtForm& b, const char* who) {
    if (a.table_ptr() != b.table_ptr() && a.table() != b.table())
        throw std::invalid_argument(std::string(who) + ": generator tables differ");
}
}  // namespace

ExtForm& ExtForm::operator+=(const ExtForm& o) {
    if (table_->empty() && terms_.empty()) table_ = o.table_;
    require_same_table(*this, o, "ExtForm::operator+=");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& o) {
    if (table_->empty() && terms_.empty()) table_ = o.table_;
    require_same_table(*this, o, "ExtForm::operator-=");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ExtForm operator-(const ExtForm& a) {
    ExtForm f = a;
    for (auto& [m, c] : f.terms_) c = -c;
    return f;
}

ExtForm& ExtForm::operator*=(const MultiPoly& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    TermMap out;
    for (const auto& [m, v] : terms_) {
        MultiPoly nv = v * c;
        if (!nv.is_zero()) out.emplace(m, std::move(nv));
    }
    terms_ = std::move(out);
    return *this;
}

ExtForm& ExtForm::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

bool operator==(const ExtForm& a, const ExtForm& b) {
    if (a.table_ptr() != b.table_ptr() && a.table() != b.table()) return false;
    return a.terms_ == b.terms_;
}

ExtForm ExtForm::projected_to(uint64_t allowed_mask) const {
    ExtForm f = zero(table_);
    for (const auto& [m, c] : terms_)
        if ((m & ~allowed_mask) == 0) f.terms_.emplace(m, c);
    return f;
}

ExtForm wedge(const ExtForm& a, const ExtForm& b) {
    require_same_table(a, b, "wedge");
    ExtForm f = ExtForm::zero(a.table_ptr());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;  // repeated generator
            int s = merge_sign(ma, mb);
            MultiPoly c = ca * cb;
            if (s < 0) c = -c;
            f.add_term(ma | mb, c);
        }
    }
    return f;
}

ExtForm subst_generators(const ExtForm& f, const std::vector<ExtForm>& images) {
    if (images.size() < f.table().size())
        throw std::invalid_argument("subst_generators: not enough images");
    GenTablePtr target = images.empty() ? f.table_ptr() : images.front().table_ptr();
    ExtForm out = ExtForm::zero(target);
    for (const auto& [m, c] : f.terms()) {
        ExtForm acc = ExtForm::scalar(c, target);
        uint64_t mm = m;
        while (mm && !acc.is_zero()) {
            int i = __builtin_ctzll(mm);
            mm &= mm - 1;
            acc = wedge(acc, images[i]);
        }
        out += acc;
    }
    return out;
}

FormMatrix::FormMatrix(int rows, int cols, GenTablePtr t)
    : rows_(rows), cols_(cols), table_(std::move(t)),
      e_(static_cast<size_t>(rows) * cols, ExtForm::zero(table_)) {}

FormMatrix FormMatrix::from_poly(const PolyMatrix& M, GenTablePtr t) {
    FormMatrix f(M.rows(), M.cols(), std::move(t));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            f.at(i, j) = ExtForm::scalar(M.at(i, j), f.table_);
    return f;
}

FormMatrix FormMatrix::operator+(const FormMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FormMatrix: dimension mismatch in +");
    FormMatrix f(rows_, cols_, table_);
    for (size_t k = 0; k < e_.size(); ++k) f.e_[k] = e_[k] + o.e_[k];
    return f;
}

FormMatrix FormMatrix::operator-(const FormMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FormMatrix: dimension mismatch in -");
    FormMatrix f(rows_, cols_, table_);
    for (size_t k = 0; k < e_.size(); ++k) f.e_[k] = e_[k] - o.e_[k];
    return f;
}

bool operator==(const FormMatrix& a, const FormMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t k = 0; k < a.e_.size(); ++k)
        if (a.e_[k] != b.e_[k]) return false;
    return true;
}

ExtForm FormMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("FormMatrix::trace: not square");
    ExtForm t = ExtForm::zero(table_);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool FormMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const ExtForm& f) { return f.is_zero(); });
}

FormMatrix FormMatrix::projected_to(uint64_t allowed_mask) const {
    FormMatrix f(rows_, cols_, table_);
    for (size_t k = 0; k < e_.size(); ++k) f.e_[k] = e_[k].projected_to(allowed_mask);
    return f;
}

std::string FormMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[ ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " | ";
            os << at(i, j).str();
        }
        os << " ]\n";
    }
    return os.str();
}

namespace {
void require_mul_compatible(const FormMatrix& a, const FormMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("FormMatrix: dimension mismatch in *");
    if (a.table_ptr() != b.table_ptr() && *a.table_ptr() != *b.table_ptr())
        throw std::invalid_argument("FormMatrix: generator tables differ in *");
}

ExtForm mul_entry(const FormMatrix& a, const FormMatrix& b, int i, int j) {
    ExtForm acc = ExtForm::zero(a.table_ptr());
    for (int k = 0; k < a.cols(); ++k) acc += wedge(a.at(i, k), b.at(k, j));
    return acc;
}
}  // namespace

FormMatrix form_matrix_mul_serial(const FormMatrix& a, const FormMatrix& b) {
    require_mul_compatible(a, b);
    FormMatrix f(a.rows(), b.cols(), a.table_ptr());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) f.at(i, j) = mul_entry(a, b, i, j);
    return f;
}

FormMatrix form_matrix_mul(const FormMatrix& a, const FormMatrix& b) {
    require_mul_compatible(a, b);
    FormMatrix f(a.rows(), b.cols(), a.table_ptr());
    const int R = a.rows(), C = b.cols();
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(effective_threads())
#endif
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) f.at(i, j) = mul_entry(a, b, i, j);
    return f;
}

FormMatrix form_matrix_power(const PolyMatrix& B, const FormMatrix& Omega, int k) {
    if (B.rows() != B.cols() || B.rows() != Omega.rows() || Omega.rows() != Omega.cols())
        throw std::invalid_argument("form_matrix_power: need square B and Omega of equal size");
    if (k < 1) throw std::invalid_argument("form_matrix_power: k must be positive");
    // Degree cap: (B*Omega)^k vanishes outright past the generator count.
    if (static_cast<size_t>(k) > Omega.table_ptr()->size())
        return FormMatrix(B.rows(), B.cols(), Omega.table_ptr());
    FormMatrix BO = form_matrix_mul(FormMatrix::from_poly(B, Omega.table_ptr()), Omega);
    FormMatrix acc = BO;
    for (int step = 1; step < k; ++step) acc = form_matrix_mul(acc, BO);
    return acc;
}

int effective_threads() {
#ifdef _OPENMP
    if (const char* env = std::getenv("CANFORM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::string ExtForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str();
        bool is_one = (cs == "1");
        bool needs_parens = c.term_count() > 1;
        if (m == 0) {
            os << (needs_parens ? "(" + cs + ")" : cs);
            continue;
        }
        if (!is_one) {
            os << (needs_parens ? "(" + cs + ")" : cs) << "*";
        }
        bool firstgen = true;
        for (size_t i = 0; i < table_->size(); ++i) {
            if (!(m & (uint64_t{1} << i))) continue;
            if (!firstgen) os << "∧";
            firstgen = false;
            os << (*table_)[i];
        }
    }
    return os.str();
}

}  // namespace canform
