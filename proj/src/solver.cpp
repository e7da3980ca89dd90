#include "hjc/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "hjc/errors.hpp"
#include "hjc/rng.hpp"

namespace hjc {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

EigenResult solve_dense(const SparseHermitian& h, const SolverOptions& opt) {
    const Index n = static_cast<Index>(h.dim());
    MatrixXcd dense = MatrixXcd::Zero(n, n);
    h.for_each_upper([&](const SparseHermitian::Entry& e) {
        dense(static_cast<Index>(e.row), static_cast<Index>(e.col)) = e.value;
        if (e.row != e.col)
            dense(static_cast<Index>(e.col), static_cast<Index>(e.row)) = std::conj(e.value);
    });
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(dense);
    if (es.info() != Eigen::Success)
        throw solver_error("dense eigensolver failed", 0.0);

    const int n_pairs = std::min<int>(opt.n_pairs, static_cast<int>(n));
    EigenResult res;
    res.used_dense = true;
    res.converged = true;
    VectorXcd hv(n);
    for (int i = 0; i < n_pairs; ++i) {
        const double ev = es.eigenvalues()(i);
        VectorXcd v = es.eigenvectors().col(i);
        h.apply(v.data(), hv.data(), opt.matvec_threads);
        res.eigenvalues.push_back(ev);
        res.eigenvectors.emplace_back(v.data(), v.data() + n);
        res.residuals.push_back((hv - ev * v).norm());
    }
    return res;
}

// One converged batch of Ritz pairs.
struct KrylovRun {
    Eigen::VectorXd values;         // ascending
    MatrixXcd vectors;              // orthonormal columns, one per value
    std::vector<double> residuals;  // explicit ||Hv - Ev|| against the full operator
};

class KrylovWorkspace {
public:
    // `deflate`: optional orthonormal columns projected out of every basis
    // vector, restricting the iteration to their orthogonal complement.
    // `matvecs` is shared across the phases of one solve so the budget in
    // `opt` bounds the whole computation.  `stream` decorrelates the random
    // draws of different phases while keeping them reproducible.
    KrylovWorkspace(const SparseHermitian& h, const SolverOptions& opt, int m,
                    const MatrixXcd* deflate, int& matvecs, std::uint64_t stream)
        : h_(h), opt_(opt), m_(m), n_(static_cast<Index>(h.dim())), deflate_(deflate),
          matvecs_(matvecs), basis_(n_, m), proj_(MatrixXcd::Zero(m, m)), w_(n_),
          rng_(derive_seed(opt.seed, 0x4b72796cULL + stream)) {}

    void random_start() { orthonormalize_into(0, 0); }

    // Seeds columns [0, k) with an orthonormalized copy of V and fills the
    // projected block with exact <v_a|H|v_b>; expansion resumes at column k.
    // Column k is primed with the combined out-of-block residual of the
    // seeds, so one Rayleigh-Ritz cycle suffices to correct a seed vector
    // that is accurate only to first order.  Returns k.
    int seeded_start(const MatrixXcd& v) {
        const int k = static_cast<int>(v.cols());
        for (int b = 0; b < k; ++b) {
            w_ = v.col(b);
            project_out(w_, b);
            const double nrm = w_.norm();
            if (nrm > 1e-8)
                basis_.col(b) = w_ / nrm;
            else
                orthonormalize_into(b, b);  // degenerate seed column
        }
        VectorXcd resid_sum = VectorXcd::Zero(n_);
        for (int b = 0; b < k; ++b) {
            operate(basis_.col(b).data());
            proj_.col(b).head(k) = basis_.leftCols(k).adjoint() * w_;
            resid_sum += w_ - basis_.leftCols(k) * proj_.col(b).head(k);
        }
        proj_.topLeftCorner(k, k) =
            0.5 * (proj_.topLeftCorner(k, k) + proj_.topLeftCorner(k, k).adjoint()).eval();
        for (int b = 0; b < k; ++b) proj_(b, b) = Complex{proj_(b, b).real(), 0.0};
        if (k < m_) {
            project_out(resid_sum, k);
            const double nrm = resid_sum.norm();
            if (nrm > 1e-13)
                basis_.col(k) = resid_sum / nrm;
            else
                orthonormalize_into(k, k);
        }
        return k;
    }

    // One expansion step: consumes basis column j (which must be filled),
    // fills projected column j and, unless j is the last column, basis
    // column j+1.  Returns the off-diagonal norm beta_j.  The deflation
    // projection is interleaved with both orthogonalization passes so the
    // remainder stays clean even when its norm is tiny; otherwise
    // normalizing a near-breakdown remainder would amplify rounding noise
    // from the deflated subspace, where the projected operator acts as
    // zero, and seed spurious Ritz values.
    double step(int j) {
        operate(basis_.col(j).data());
        const double w_scale = w_.norm();
        const auto active = basis_.leftCols(j + 1);
        VectorXcd coeff = VectorXcd::Zero(j + 1);
        for (int pass = 0; pass < 2; ++pass) {
            if (deflate_)
                w_.noalias() -= (*deflate_) * ((*deflate_).adjoint() * w_).eval();
            const VectorXcd c = active.adjoint() * w_;
            w_.noalias() -= active * c;
            coeff += c;
        }
        proj_.col(j).head(j + 1) = coeff;
        proj_.row(j).head(j + 1) = coeff.conjugate().transpose();
        proj_(j, j) = Complex{coeff(j).real(), 0.0};
        const double beta = w_.norm();
        // A remainder this small relative to ||H v_j|| means the reachable
        // subspace is locally exhausted; continue from a fresh random
        // direction instead of a noise-dominated one.
        const double beta_floor = breakdown_tol_ * (1.0 + w_scale);
        if (j + 1 < m_) {
            if (beta < beta_floor) {
                orthonormalize_into(j + 1, j + 1);
                proj_(j + 1, j) = Complex{0.0, 0.0};
                proj_(j, j + 1) = Complex{0.0, 0.0};
            } else {
                basis_.col(j + 1) = w_ / beta;
                proj_(j + 1, j) = Complex{beta, 0.0};
                proj_(j, j + 1) = Complex{beta, 0.0};
            }
        } else {
            cont_ = w_;  // unnormalized remainder, used by restart()
            cont_ok_ = beta >= beta_floor;
        }
        return beta;
    }

    // Rayleigh-Ritz on the current m-dimensional subspace.
    void ritz() {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(proj_);
        if (es.info() != Eigen::Success)
            throw solver_error("projected eigensolver failed", best_residual);
        values_ = es.eigenvalues();
        y_ = es.eigenvectors();
    }

    // Explicit residual of Ritz pair i against the full operator; fills u
    // with the Ritz vector.
    double residual(int i, VectorXcd& u) {
        u.noalias() = basis_ * y_.col(i);
        operate(u.data());
        return (w_ - values_(i) * u).norm();
    }

    // Thick restart keeping the n_keep lowest Ritz vectors; afterwards
    // basis columns 0..n_keep and projected columns 0..n_keep-1 are valid
    // and expansion resumes at column n_keep.
    void restart(int n_keep, double beta_last) {
        MatrixXcd kept = basis_ * y_.leftCols(n_keep);
        basis_.leftCols(n_keep) = kept;
        if (!cont_ok_) {
            orthonormalize_into(n_keep, n_keep);
        } else {
            basis_.col(n_keep) = cont_ / beta_last;
        }
        proj_.setZero();
        for (int i = 0; i < n_keep; ++i)
            proj_(i, i) = Complex{values_(i), 0.0};
        // The border couplings <v_i|H|cont> are filled by the next step()
        // call at column n_keep, which recomputes them with explicit dots.
    }

    double ritz_value(int i) const { return values_(i); }
    double best_residual = std::numeric_limits<double>::infinity();

private:
    // Budget-checked application of the operator into w_.
    void operate(const Complex* x) {
        if (matvecs_ >= opt_.max_matvecs)
            throw solver_error("eigensolver did not converge within the matvec budget",
                               best_residual);
        h_.apply(x, w_.data(), opt_.matvec_threads);
        ++matvecs_;
    }

    void fill_random(VectorXcd& v) {
        for (Index i = 0; i < n_; ++i)
            v(i) = Complex{rng_.gaussian(), rng_.gaussian()};
    }

    // Two-pass projection of x against the deflation set and the first
    // n_active basis columns.
    void project_out(VectorXcd& x, int n_active) {
        for (int pass = 0; pass < 2; ++pass) {
            if (deflate_)
                x.noalias() -= (*deflate_) * ((*deflate_).adjoint() * x).eval();
            if (n_active > 0) {
                const auto active = basis_.leftCols(n_active);
                x.noalias() -= active * (active.adjoint() * x).eval();
            }
        }
    }

    // Writes a random vector orthonormal to the deflation set and basis
    // columns [0, n_active) into basis column slot.
    void orthonormalize_into(int slot, int n_active) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            fill_random(w_);
            project_out(w_, n_active);
            const double nrm = w_.norm();
            if (nrm > 1e-8) {
                basis_.col(slot) = w_ / nrm;
                return;
            }
        }
        throw solver_error("failed to generate an orthogonal restart vector", best_residual);
    }

    const SparseHermitian& h_;
    const SolverOptions& opt_;
    int m_;
    Index n_;
    const MatrixXcd* deflate_;
    int& matvecs_;
    MatrixXcd basis_;
    MatrixXcd proj_;
    VectorXcd w_;
    VectorXcd cont_;
    bool cont_ok_ = false;
    Rng rng_;
    Eigen::VectorXd values_;
    MatrixXcd y_;
    static constexpr double breakdown_tol_ = 1e-10;  // relative to ||H v||
};

// Runs the thick-restart iteration until the lowest n_pairs Ritz pairs all
// have explicit residuals <= tol.  With `deflate` set the iteration works in
// the orthogonal complement of those columns; with `seed` set the subspace
// is warm-started from the given vectors instead of a random direction.
KrylovRun krylov_run(const SparseHermitian& h, const SolverOptions& opt, int n_pairs, int m,
                     double tol, const MatrixXcd* deflate, const MatrixXcd* seed,
                     int& matvecs, std::uint64_t stream) {
    const Index n = static_cast<Index>(h.dim());
    KrylovWorkspace ws(h, opt, m, deflate, matvecs, stream);
    int first_col = 0;
    if (seed)
        first_col = ws.seeded_start(*seed);
    else
        ws.random_start();
    const int n_keep = std::min(n_pairs + 8, std::max(m / 2, 1));
    VectorXcd u(n);
    while (true) {
        double beta_last = 0.0;
        for (int j = first_col; j < m; ++j) beta_last = ws.step(j);
        ws.ritz();

        bool all_ok = true;
        double worst = 0.0;
        for (int i = 0; i < n_pairs; ++i) {
            const double r = ws.residual(i, u);
            worst = std::max(worst, r);
            if (r > tol) {
                all_ok = false;
                break;
            }
        }
        if (worst > 0.0) ws.best_residual = std::min(ws.best_residual, worst);

        if (all_ok) {
            KrylovRun out;
            out.values.resize(n_pairs);
            out.vectors.resize(n, n_pairs);
            out.residuals.resize(static_cast<std::size_t>(n_pairs));
            for (int i = 0; i < n_pairs; ++i) {
                const double r = ws.residual(i, u);
                u.normalize();
                out.values(i) = ws.ritz_value(i);
                out.vectors.col(i) = u;
                out.residuals[static_cast<std::size_t>(i)] = r;
            }
            return out;
        }

        ws.restart(n_keep, beta_last);
        first_col = n_keep;
    }
}

EigenResult solve_krylov(const SparseHermitian& h, const SolverOptions& opt) {
    const Index n = static_cast<Index>(h.dim());
    const int k = std::min<int>(opt.n_pairs, static_cast<int>(n));
    const int m = std::min<int>(std::max(opt.krylov_dim, k + 12), static_cast<int>(n));
    int matvecs = 0;

    KrylovRun run = krylov_run(h, opt, k, m, opt.tol, nullptr, nullptr, matvecs, 0);

    // A single Krylov sequence contains exactly one direction from each
    // eigenspace of the operator, so a degenerate level among the lowest
    // pairs can converge with too low a multiplicity while every residual
    // passes.  Verify by deflated probes: solve for the lowest pair in the
    // orthogonal complement of the returned set; if it undercuts the set,
    // merge it in and re-solve warm-started from the enlarged subspace.
    // The probe tolerance is looser than the final tolerance because a
    // probe vector's residual floor is set by the residuals of the deflated
    // set; the decision margin is wider still, so the comparison is sound.
    if (k < static_cast<int>(n)) {
        const double margin = 100.0 * opt.tol;
        const double probe_tol = 25.0 * opt.tol;
        std::uint64_t stream = 1;
        while (true) {
            const int m_probe =
                std::min<int>(std::max(opt.krylov_dim / 2, 16), static_cast<int>(n) - k);
            const KrylovRun probe = krylov_run(h, opt, 1, m_probe, probe_tol, &run.vectors,
                                               nullptr, matvecs, stream++);
            if (probe.values(0) >= run.values(k - 1) - margin) break;

            MatrixXcd merged(n, k);
            Eigen::VectorXd merged_vals(k);
            int pos = 0;
            while (pos < k && run.values(pos) <= probe.values(0)) ++pos;
            for (int i = 0; i < pos; ++i) {
                merged.col(i) = run.vectors.col(i);
                merged_vals(i) = run.values(i);
            }
            merged.col(pos) = probe.vectors.col(0);
            merged_vals(pos) = probe.values(0);
            for (int i = pos + 1; i < k; ++i) {
                merged.col(i) = run.vectors.col(i - 1);
                merged_vals(i) = run.values(i - 1);
            }
            run = krylov_run(h, opt, k, m, opt.tol, nullptr, &merged, matvecs, stream++);
        }
    }

    EigenResult res;
    res.converged = true;
    res.iterations = matvecs;
    for (int i = 0; i < k; ++i) {
        res.eigenvalues.push_back(run.values(i));
        res.eigenvectors.emplace_back(run.vectors.col(i).data(),
                                      run.vectors.col(i).data() + n);
        res.residuals.push_back(run.residuals[static_cast<std::size_t>(i)]);
    }
    return res;
}

} // namespace

EigenResult lowest_eigenpairs(const SparseHermitian& h, const SolverOptions& opt) {
    if (opt.n_pairs < 1) throw param_error("n_pairs must be >= 1");
    if (!(opt.tol > 0.0)) throw param_error("tol must be positive");
    if (h.dim() == 0) throw param_error("empty matrix");
    if (h.dim() <= opt.dense_threshold) return solve_dense(h, opt);
    return solve_krylov(h, opt);
}

} // namespace hjc
