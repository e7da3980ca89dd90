#include "hjc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "hjc/errors.hpp"

namespace hjc {

SparseBuilder::SparseBuilder(std::size_t dim) : dim_(dim) {}

void SparseBuilder::add(std::size_t row, std::size_t col, Complex value) {
    if (row >= dim_ || col >= dim_)
        throw param_error("sparse entry index out of range");
    if (value == Complex{0.0, 0.0}) return;
    if (row > col) {
        std::swap(row, col);
        value = std::conj(value);
    }
    rows_.push_back(row);
    cols_.push_back(col);
    vals_.push_back(value);
}

SparseHermitian SparseBuilder::finalize() && {
    const std::size_t n = rows_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows_[a] != rows_[b]) return rows_[a] < rows_[b];
        return cols_[a] < cols_[b];
    });

    SparseHermitian m;
    m.dim_ = dim_;
    m.row_ptr_.assign(dim_ + 1, 0);
    for (std::size_t p = 0; p < n;) {
        const std::uint64_t r = rows_[order[p]];
        const std::uint64_t c = cols_[order[p]];
        Complex acc{0.0, 0.0};
        while (p < n && rows_[order[p]] == r && cols_[order[p]] == c)
            acc += vals_[order[p++]];
        if (acc == Complex{0.0, 0.0}) continue;
        if (r == c) {
            if (std::abs(acc.imag()) > 1e-12 * (1.0 + std::abs(acc.real())))
                throw param_error("Hermitian matrix has a complex diagonal entry");
            acc = Complex{acc.real(), 0.0};
        }
        m.cols_.push_back(c);
        m.vals_.push_back(acc);
        ++m.row_ptr_[r + 1];
    }
    for (std::size_t i = 0; i < dim_; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    m.build_mirror();
    return m;
}

void SparseHermitian::build_mirror() {
    mirror_ptr_.assign(dim_ + 1, 0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            if (cols_[p] != i) ++mirror_ptr_[cols_[p] + 1];
    for (std::size_t i = 0; i < dim_; ++i) mirror_ptr_[i + 1] += mirror_ptr_[i];
    mirror_cols_.assign(mirror_ptr_[dim_], 0);
    mirror_vidx_.assign(mirror_ptr_[dim_], 0);
    std::vector<std::uint64_t> cursor(mirror_ptr_.begin(), mirror_ptr_.end() - 1);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            if (cols_[p] != i) {
                const std::uint64_t slot = cursor[cols_[p]]++;
                mirror_cols_[slot] = i;
                mirror_vidx_[slot] = p;
            }
}

void SparseHermitian::apply(const Complex* x, Complex* y, int n_threads) const {
    auto run_rows = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Complex acc{0.0, 0.0};
            for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                acc += vals_[p] * x[cols_[p]];
            for (std::uint64_t p = mirror_ptr_[i]; p < mirror_ptr_[i + 1]; ++p)
                acc += std::conj(vals_[mirror_vidx_[p]]) * x[mirror_cols_[p]];
            y[i] = acc;
        }
    };
    if (n_threads <= 1 || dim_ < 4096) {
        run_rows(0, dim_);
        return;
    }
    const std::size_t t = static_cast<std::size_t>(n_threads);
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::size_t chunk = (dim_ + t - 1) / t;
    for (std::size_t w = 0; w < t; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(dim_, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
}

std::vector<Complex> SparseHermitian::apply(const std::vector<Complex>& x, int n_threads) const {
    if (x.size() != dim_)
        throw param_error("matvec input length does not match matrix dimension");
    std::vector<Complex> y(dim_);
    apply(x.data(), y.data(), n_threads);
    return y;
}

double SparseHermitian::expectation(const std::vector<Complex>& x) const {
    const auto y = apply(x);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) acc += std::conj(x[i]) * y[i];
    return acc.real();
}

double SparseHermitian::frobenius_norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            const double a = std::norm(vals_[p]);
            acc += (cols_[p] == i) ? a : 2.0 * a;
        }
    return std::sqrt(acc);
}

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void SparseHermitian::dump(std::ostream& os) const {
    put<std::uint64_t>(os, dim_);
    put<std::uint64_t>(os, vals_.size());
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::uint64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            put<std::uint64_t>(os, i);
            put<std::uint64_t>(os, cols_[p]);
            put<double>(os, vals_[p].real());
            put<double>(os, vals_[p].imag());
        }
    if (!os) throw io_error("failed to write sparse matrix dump");
}

SparseHermitian SparseHermitian::load(std::istream& is) {
    const auto dim = get<std::uint64_t>(is);
    const auto nnz = get<std::uint64_t>(is);
    if (!is) throw io_error("failed to read sparse matrix header");
    SparseBuilder b(static_cast<std::size_t>(dim));
    for (std::uint64_t p = 0; p < nnz; ++p) {
        const auto r = get<std::uint64_t>(is);
        const auto c = get<std::uint64_t>(is);
        const auto re = get<double>(is);
        const auto im = get<double>(is);
        if (!is) throw io_error("truncated sparse matrix dump");
        b.add(static_cast<std::size_t>(r), static_cast<std::size_t>(c), Complex{re, im});
    }
    return std::move(b).finalize();
}

} // namespace hjc
