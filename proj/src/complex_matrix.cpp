#include "bellsim/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("ComplexMatrix: entry count must equal dim^2");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Complex{1.0, 0.0};
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::hermiticity_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            e = std::max(e, std::abs(at(i, j) - std::conj(at(j, i))));
    return e;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dim mismatch");
    ComplexMatrix r(a.dim_);
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dim mismatch");
    ComplexMatrix r(a.dim_);
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dim mismatch");
    const std::size_t n = a.dim_;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix r(a.dim_);
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = s * a.entries_[i];
    return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex{s, 0.0} * a; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a.at(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    r.at(i * nb + k, j * nb + l) = aij * b.at(k, l);
        }
    return r;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) t += a.at(i, k) * b.at(k, i);
    return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) e = std::max(e, std::abs(a.at(i, j) - b.at(i, j)));
    return e;
}

namespace {

// Cyclic Jacobi for a dense real symmetric matrix; returns eigenvalues only.
std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[idx(i, j)] * a[idx(i, j)];
        if (off <= 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[idx(p, q)];
                if (std::abs(apq) < 1e-300) continue;
                const double app = a[idx(p, p)], aqq = a[idx(q, q)];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[idx(k, p)], akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[idx(p, k)], aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[idx(i, i)];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    const std::size_t n2 = 2 * n;
    std::vector<double> a(n2 * n2, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = m.at(i, j);
            a[i * n2 + j] = v.real();
            a[(i + n) * n2 + (j + n)] = v.real();
            a[i * n2 + (j + n)] = -v.imag();
            a[(i + n) * n2 + j] = v.imag();
        }
    const std::vector<double> doubled = jacobi_symmetric_eigenvalues(std::move(a), n2);
    // The embedding doubles every eigenvalue; keep one of each adjacent pair.
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = doubled[2 * i];
    return ev;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace bellsim
