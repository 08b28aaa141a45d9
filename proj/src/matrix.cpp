#include "qtorus/matrix.hpp"

#include <sstream>

namespace qtorus {

TorusMatrix::TorusMatrix(PresentationPtr pres, std::size_t ell) : pres_(std::move(pres)), ell_(ell) {
    if (ell_ < 1) throw SizeMismatch("matrix size must be positive");
    e_.assign(ell_ * ell_, TorusElement(pres_));
}

TorusMatrix TorusMatrix::identity(PresentationPtr pres, std::size_t ell) {
    TorusMatrix m(pres, ell);
    for (std::size_t i = 0; i < ell; ++i) m.at(i, i) = TorusElement::unit(pres);
    return m;
}

TorusMatrix TorusMatrix::matrix_unit(PresentationPtr pres, std::size_t ell, std::size_t i,
                                     std::size_t j) {
    TorusMatrix m(pres, ell);
    m.at(i, j) = TorusElement::unit(pres);
    return m;
}

TorusMatrix TorusMatrix::scaled_unit(PresentationPtr pres, std::size_t ell, std::size_t i,
                                     std::size_t j, const TorusElement& a) {
    TorusMatrix m(std::move(pres), ell);
    m.at(i, j) = a;
    return m;
}

const TorusElement& TorusMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= ell_ || j >= ell_) throw SizeMismatch("matrix index out of range");
    return e_[i * ell_ + j];
}

TorusElement& TorusMatrix::at(std::size_t i, std::size_t j) {
    if (i >= ell_ || j >= ell_) throw SizeMismatch("matrix index out of range");
    return e_[i * ell_ + j];
}

namespace {

void check_shape(const TorusMatrix& x, const TorusMatrix& y) {
    if (x.size() != y.size()) throw SizeMismatch("matrix sizes differ");
    if (!same_presentation(x.pres(), y.pres()))
        throw PresentationMismatch("matrices live over different presentations");
}

} // namespace

TorusMatrix TorusMatrix::operator+(const TorusMatrix& o) const {
    check_shape(*this, o);
    TorusMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] + o.e_[k];
    return r;
}

TorusMatrix TorusMatrix::operator-() const {
    TorusMatrix r = *this;
    for (auto& v : r.e_) v = -v;
    return r;
}

TorusMatrix TorusMatrix::operator-(const TorusMatrix& o) const { return *this + (-o); }

TorusMatrix TorusMatrix::scaled(const Scalar& s) const {
    TorusMatrix r = *this;
    for (auto& v : r.e_) v = v.scaled(s);
    return r;
}

TorusMatrix TorusMatrix::scaled(const TorusElement& z) const {
    TorusMatrix r = *this;
    for (auto& v : r.e_) v = qt_mul(z, v);
    return r;
}

bool TorusMatrix::operator==(const TorusMatrix& o) const {
    if (ell_ != o.ell_ || !same_presentation(pres_, o.pres_)) return false;
    return e_ == o.e_;
}

bool TorusMatrix::is_zero() const {
    for (const auto& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

std::string TorusMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < ell_; ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < ell_; ++j) os << at(i, j).str() << (j + 1 < ell_ ? " | " : "");
        os << " ]\n";
    }
    return os.str();
}

TorusMatrix mat_mul(const TorusMatrix& x, const TorusMatrix& y) {
    check_shape(x, y);
    std::size_t n = x.size();
    TorusMatrix r(x.pres(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + qt_mul(x.at(i, k), y.at(k, j));
            }
        }
    return r;
}

TorusMatrix lie_bracket(const TorusMatrix& x, const TorusMatrix& y) {
    return mat_mul(x, y) - mat_mul(y, x);
}

TorusElement mat_trace(const TorusMatrix& x) {
    TorusElement t(x.pres());
    for (std::size_t i = 0; i < x.size(); ++i) t = t + x.at(i, i);
    return t;
}

TorusMatrix mat_transpose(const TorusMatrix& x) {
    TorusMatrix r(x.pres(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r.at(i, j) = x.at(j, i);
    return r;
}

bool in_sl(const TorusMatrix& x) { return centre_split(mat_trace(x)).central.is_zero(); }

bool is_diagonal(const TorusMatrix& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (i != j && !x.at(i, j).is_zero()) return false;
    return true;
}

SlDecomposition sl_decompose(const TorusMatrix& x) {
    if (!in_sl(x)) throw NotInSl("element is not in sl");
    SlDecomposition d;
    d.bracket_part = mat_trace(x); // lies in [Q,Q] by the sl condition
    d.traceless_diagonal.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        TorusElement di = x.at(i, i);
        if (i == 0) di = di - d.bracket_part;
        d.traceless_diagonal.push_back(std::move(di));
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (i != j && !x.at(i, j).is_zero()) d.off_diagonal[{i, j}] = x.at(i, j);
    return d;
}

TorusMatrix sl_reassemble(const PresentationPtr& pres, std::size_t ell, const SlDecomposition& d) {
    TorusMatrix x(pres, ell);
    x.at(0, 0) = d.bracket_part;
    for (std::size_t i = 0; i < ell; ++i) x.at(i, i) = x.at(i, i) + d.traceless_diagonal[i];
    for (const auto& [ij, v] : d.off_diagonal) x.at(ij.first, ij.second) = v;
    return x;
}

bool good_characteristic(const FieldKind& f, std::size_t ell) {
    if (f.kind != ScalarKind::Prime) return true;
    return f.p > 3 && f.p % static_cast<std::int64_t>(ell) != 0;
}

StandardMad standard_mad(const PresentationPtr& pres, std::size_t ell) {
    if (ell < 2) throw SizeMismatch("standard MAD needs ell >= 2");
    if (!good_characteristic(pres->field(), ell))
        throw BadCharacteristic("characteristic is not good for sl_" + std::to_string(ell));
    StandardMad h;
    h.ell = ell;
    for (std::size_t i = 0; i + 1 < ell; ++i)
        h.basis.push_back(TorusMatrix::matrix_unit(pres, ell, i, i) -
                          TorusMatrix::matrix_unit(pres, ell, i + 1, i + 1));
    return h;
}

MadExtensionResult mad_extension_test(const TorusMatrix& d) {
    if (!is_diagonal(d)) throw NotDiagonal("MAD extension test expects a diagonal matrix");
    if (!in_sl(d)) throw NotInSl("MAD extension test expects an sl element");
    const Presentation& p = *d.pres();
    MadExtensionResult out;

    // step 1: ad d_i diagonalizable on Q <=> d_i central
    for (std::size_t i = 0; i < d.size(); ++i) {
        const TorusElement& di = d.at(i, i);
        CentreSplit split = centre_split(di);
        if (!split.bracket.is_zero()) {
            out.failing_step = 1;
            out.entry_i = i;
            out.witness = split.bracket;
            return out;
        }
    }
    // step 2: left multiplication by d_i - d_j diagonalizable <=> d_i - d_j in F*1
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            TorusElement diff = d.at(i, i) - d.at(j, j);
            for (const auto& [lam, c] : diff.terms()) {
                bool origin = true;
                for (Int v : lam) origin = origin && v == 0;
                if (!origin) {
                    out.failing_step = 2;
                    out.entry_i = i;
                    out.entry_j = j;
                    out.witness = diff;
                    return out;
                }
            }
        }
    // step 3: the telescoping trace identity forces every d_i into F*1
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (const auto& [lam, c] : d.at(i, i).terms()) {
            bool origin = true;
            for (Int v : lam) origin = origin && v == 0;
            if (!origin) {
                out.failing_step = 3;
                out.entry_i = i;
                out.witness = d.at(i, i);
                return out;
            }
        }
    }
    (void)p;
    out.in_standard_mad = true;
    return out;
}

std::vector<TorusMatrix> sl_generators(const PresentationPtr& pres, std::size_t ell) {
    std::vector<TorusMatrix> gens;
    std::size_t n = pres->rank();
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) {
            if (i == j) continue;
            gens.push_back(TorusMatrix::matrix_unit(pres, ell, i, j));
            for (std::size_t p = 0; p < n; ++p) {
                gens.push_back(TorusMatrix::scaled_unit(pres, ell, i, j,
                                                        TorusElement::generator(pres, p, 1)));
                gens.push_back(TorusMatrix::scaled_unit(pres, ell, i, j,
                                                        TorusElement::generator(pres, p, -1)));
            }
        }
    return gens;
}

} // namespace qtorus
