#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bellsim {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Dimensions here are 2 (one arm)
// and 4 (photon pair); nothing is tuned for large sizes.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {}
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    // max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol) const { return hermiticity_error() <= tol; }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
    friend ComplexMatrix operator*(double s, const ComplexMatrix& a);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix, ascending. Computed by cyclic Jacobi
// on the real-symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is
// that of the input with every eigenvalue doubled.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

}  // namespace bellsim
