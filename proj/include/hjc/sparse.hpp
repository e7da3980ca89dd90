#pragma once

// Compressed sparse complex-Hermitian matrix.  Only the upper triangle
// (col >= row) is stored; the operator is defined as stored + conjugate
// transpose of the strictly-upper part.  Diagonal entries are real.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hjc {

using Complex = std::complex<double>;

class SparseHermitian;

// Triplet accumulator.  Entries may be added in any order and in any
// triangle; duplicates are summed.  Lower-triangle input (row > col) is
// folded into the upper triangle by conjugation.
class SparseBuilder {
public:
    explicit SparseBuilder(std::size_t dim);

    void add(std::size_t row, std::size_t col, Complex value);
    std::size_t dim() const { return dim_; }

    // Sorts, merges duplicates, drops exact zeros, checks that diagonal
    // entries are real (throws param_error otherwise).
    SparseHermitian finalize() &&;

private:
    std::size_t dim_;
    std::vector<std::uint64_t> rows_, cols_;
    std::vector<Complex> vals_;
};

class SparseHermitian {
public:
    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return vals_.size(); }

    // y = H x using the Hermitian completion.  Each output element is a
    // single sequential dot product, so the result is bitwise identical
    // for any thread count.  n_threads <= 1 runs sequentially.
    void apply(const Complex* x, Complex* y, int n_threads = 1) const;
    std::vector<Complex> apply(const std::vector<Complex>& x, int n_threads = 1) const;

    // <x|H|x>; real up to rounding by construction.
    double expectation(const std::vector<Complex>& x) const;

    double frobenius_norm() const;

    // Iteration over the stored upper-triangle entries (row-major order).
    struct Entry {
        std::size_t row, col;
        Complex value;
    };
    template <typename F>
    void for_each_upper(F&& f) const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                f(Entry{i, static_cast<std::size_t>(cols_[p]), vals_[p]});
    }

    // Binary interchange format, little endian: header {uint64 dim,
    // uint64 nnz}, then nnz records {uint64 row, uint64 col, float64 re,
    // float64 im} listing the stored upper triangle row-major.
    void dump(std::ostream& os) const;
    static SparseHermitian load(std::istream& is);

private:
    friend class SparseBuilder;
    SparseHermitian() = default;

    void build_mirror();

    std::size_t dim_ = 0;
    // upper triangle, CSR
    std::vector<std::uint64_t> row_ptr_;
    std::vector<std::uint64_t> cols_;
    std::vector<Complex> vals_;
    // strictly-lower mirror: row i gathers conj(vals_[val_idx]) * x[col]
    std::vector<std::uint64_t> mirror_ptr_;
    std::vector<std::uint64_t> mirror_cols_;
    std::vector<std::uint64_t> mirror_vidx_;
};

} // namespace hjc
