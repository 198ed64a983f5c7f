#include "hsch/convolution.hpp"

#include <cmath>
#include <stdexcept>

#include "hsch/errors.hpp"

namespace hsch {

ExpQuad exp_quad(double rate, double dt) {
    const double a = rate * dt;
    ExpQuad q;
    // rate·dt beyond exp range: decay underflows to 0 and the increment
    // degenerates to the endpoint rule c_new = 1/rate
    q.decay = std::exp(-a);
    if (a < 1e-3) {
        // series for (a-1+e^{-a})/(a·rate) and (1-(1+a)e^{-a})/(a·rate)
        q.c_new = dt * (0.5 - a / 6.0 + a * a / 24.0 - a * a * a / 120.0 + a * a * a * a / 720.0);
        q.c_old = dt * (0.5 - a / 3.0 + a * a / 8.0 - a * a * a / 30.0 + a * a * a * a / 144.0);
    } else {
        q.c_new = (a - 1.0 + q.decay) / (a * rate);
        q.c_old = (1.0 - (1.0 + a) * q.decay) / (a * rate);
    }
    return q;
}

ConvolutionState::ConvolutionState(std::vector<KernelMode> modes, std::size_t len, double dt)
    : modes_(std::move(modes)), len_(len), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ConvolutionState: dt must be > 0");
    quad_.reserve(modes_.size());
    for (const KernelMode& m : modes_) quad_.push_back(exp_quad(m.rate, dt));
    I_.assign(modes_.size() * len_, 0.0);
    f_prev_.assign(len_, 0.0);
    value_.assign(len_, 0.0);
}

void ConvolutionState::seed(const std::vector<double>& f0) {
    if (seeded_) throw std::logic_error("ConvolutionState: already seeded");
    if (f0.size() != len_) throw std::invalid_argument("ConvolutionState: seed length");
    f_prev_ = f0;
    seeded_ = true;
}

void ConvolutionState::advance(const std::vector<double>& f_new) {
    ops_last_ = 0;
    std::fill(value_.begin(), value_.end(), 0.0);
    for (std::size_t m = 0; m < modes_.size(); ++m) {
        const ExpQuad& q = quad_[m];
        const double w = modes_[m].weight;
        double* Im = I_.data() + m * len_;
        for (std::size_t c = 0; c < len_; ++c) {
            Im[c] = q.decay * Im[c] + q.c_old * f_prev_[c] + q.c_new * f_new[c];
            value_[c] += w * Im[c];
        }
        ops_last_ += len_;
    }
    f_prev_ = f_new;
    t_ += dt_;
    ++steps_;
}

const std::vector<double>& ConvolutionState::step(const std::vector<double>& f_new) {
    if (!seeded_) throw std::logic_error("ConvolutionState: seed before stepping");
    if (f_new.size() != len_) throw std::invalid_argument("ConvolutionState: sample length");
    advance(f_new);
    return value_;
}

const std::vector<double>& ConvolutionState::step_replacing_seed(const std::vector<double>& f_new) {
    if (steps_ != 0) throw std::logic_error("ConvolutionState: seed already consumed");
    if (f_new.size() != len_) throw std::invalid_argument("ConvolutionState: sample length");
    f_prev_ = f_new;
    seeded_ = true;
    advance(f_new);
    return value_;
}

const std::vector<double>& ConvolutionState::solve_step(const std::vector<double>& target,
                                                        std::vector<double>& f_out,
                                                        double weight_floor) {
    if (target.size() != len_) throw std::invalid_argument("ConvolutionState: target length");
    const bool tie_seed = (steps_ == 0);
    double w_inst = 0.0;
    for (std::size_t m = 0; m < modes_.size(); ++m)
        w_inst += modes_[m].weight * (quad_[m].c_new + (tie_seed ? quad_[m].c_old : 0.0));
    if (!(w_inst > weight_floor))
        throw SolverError("ConvolutionState: deconvolution ill-conditioned, instantaneous weight " +
                              std::to_string(w_inst),
                          w_inst, 0);

    // base = value with f_new = 0 (and, on the tied first step, f_prev = 0)
    f_out.assign(len_, 0.0);
    for (std::size_t c = 0; c < len_; ++c) {
        double base = 0.0;
        for (std::size_t m = 0; m < modes_.size(); ++m) {
            const ExpQuad& q = quad_[m];
            base += modes_[m].weight *
                    (q.decay * I_[m * len_ + c] + (tie_seed ? 0.0 : q.c_old * f_prev_[c]));
        }
        f_out[c] = (target[c] - base) / w_inst;
    }
    if (tie_seed) {
        if (!seeded_) seeded_ = true;
        f_prev_ = f_out;
    }
    advance(f_out);
    return value_;
}

std::vector<std::vector<double>> conv_direct(const MemoryKernel& kernel,
                                             const std::vector<double>& times,
                                             const std::vector<std::vector<std::vector<double>>>& samples,
                                             double t) {
    if (times.size() != samples.size() || times.empty())
        throw std::invalid_argument("conv_direct: times/samples mismatch");
    const double dt = times.size() > 1 ? times[1] - times[0] : 0.0;
    for (std::size_t k = 1; k < times.size(); ++k)
        if (std::abs(times[k] - times[k - 1] - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("conv_direct: samples must be uniformly spaced");
    if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
        throw std::invalid_argument("conv_direct: t outside sample range");
    // t must lie on the grid
    const double pos = (t - times.front()) / (dt > 0.0 ? dt : 1.0);
    const auto kk = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(kk)) > 1e-9)
        throw std::invalid_argument("conv_direct: t not on the sample grid");

    const int dim = kernel.dim();
    const std::size_t len = samples.front().front().size();
    std::vector<std::vector<double>> out(static_cast<std::size_t>(dim),
                                         std::vector<double>(len, 0.0));
    if (kk == 0) return out;

    for (std::size_t s = 0; s <= kk; ++s) {
        const double wq = (s == 0 || s == kk) ? 0.5 * dt : dt;
        const KernelValue G = kernel.evaluate(t - times[s]);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const double gij = G(i, j);
                if (gij == 0.0) continue;
                const auto& f = samples[s][static_cast<std::size_t>(j)];
                auto& o = out[static_cast<std::size_t>(i)];
                for (std::size_t c = 0; c < len; ++c) o[c] += wq * gij * f[c];
            }
    }
    return out;
}

double conv_direct_scalar(const std::vector<KernelMode>& modes,
                          const std::vector<double>& times,
                          const std::vector<double>& samples, double t) {
    MemoryKernel k(1);
    k.set_entry(0, 0, modes);
    std::vector<std::vector<std::vector<double>>> s(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) s[i] = {{samples[i]}};
    return conv_direct(k, times, s, t)[0][0];
}

MatrixConvolution::MatrixConvolution(const MemoryKernel& kernel, std::size_t len, double dt)
    : dim_(kernel.dim()), len_(len) {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            states_.emplace_back(kernel.entry(i, j), len, dt);
    value_.assign(static_cast<std::size_t>(dim_), std::vector<double>(len, 0.0));
}

void MatrixConvolution::seed(const std::vector<std::vector<double>>& f0) {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            states_[static_cast<std::size_t>(i * dim_ + j)].seed(f0[static_cast<std::size_t>(j)]);
}

const std::vector<std::vector<double>>& MatrixConvolution::step(
    const std::vector<std::vector<double>>& f_new) {
    for (int i = 0; i < dim_; ++i) {
        auto& vi = value_[static_cast<std::size_t>(i)];
        std::fill(vi.begin(), vi.end(), 0.0);
        for (int j = 0; j < dim_; ++j) {
            const auto& v =
                states_[static_cast<std::size_t>(i * dim_ + j)].step(f_new[static_cast<std::size_t>(j)]);
            for (std::size_t c = 0; c < len_; ++c) vi[c] += v[c];
        }
    }
    return value_;
}

} // namespace hsch
