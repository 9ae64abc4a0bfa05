#include "rsf/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <algorithm>
#include <set>
#include <thread>

#include <boost/random/normal_distribution.hpp>

namespace rsf {

int wishart_rows(const EnsembleModel& model, int N) {
  if (model.kind != EnsembleKind::Wishart) return N;
  if (model.explicit_d()) return model.dimension();
  if (!model.ratio) throw std::invalid_argument("sampling an identity Wishart model needs a numeric c");
  Rational x = *model.ratio * N;
  BigInt fl = numerator(x) / denominator(x);  // floor for positive x
  Rational frac = x - Rational(fl);
  BigInt m = fl;
  if (frac > Rational(1, 2) || (frac == Rational(1, 2) && fl % 2 != 0)) m += 1;
  if (m < 1) throw std::invalid_argument("round(cN) must be at least 1");
  return m.convert_to<int>();
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
  // splitmix64 finalizer over (seed, block)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (block + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

Eigen::MatrixXd gaussian(int rows, int cols, Rng& rng) {
  boost::random::normal_distribution<double> nd;
  Eigen::MatrixXd g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = nd(rng);
  return g;
}

Eigen::MatrixXd to_double_matrix(const RMatrix& m) {
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
  return d;
}

// Base draw per colour: Z, T, or X (M×N, scaled by 1/√N).
Eigen::MatrixXd base_draw(const EnsembleModel& model, int N, Rng& rng) {
  double s = 1.0 / std::sqrt(static_cast<double>(N));
  switch (model.kind) {
    case EnsembleKind::Ginibre:
      return gaussian(N, N, rng) * s;
    case EnsembleKind::GOE: {
      Eigen::MatrixXd g = gaussian(N, N, rng);
      return (g + g.transpose()) * (s / std::sqrt(2.0));
    }
    case EnsembleKind::Wishart:
      return gaussian(wishart_rows(model, N), N, rng) * s;
  }
  return {};
}

Eigen::MatrixXd from_base(const EnsembleModel& model, const Eigen::MatrixXd& base, const std::string& label) {
  if (model.kind != EnsembleKind::Wishart) return base;
  if (!model.explicit_d()) return base.transpose() * base;
  return base.transpose() * to_double_matrix(model.matrix(label)) * base;
}

}  // namespace

Eigen::MatrixXd sample_matrix(const EnsembleModel& model, int N, Rng& rng, const std::string& label) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  return from_base(model, base_draw(model, N, rng), label);
}

namespace {

struct Factor {
  std::vector<Letter> letters;
  double kappa = 0;  // subtracted multiple of I (centred only)
};

struct TracePlan {
  bool normalized = true;
  bool centred = false;
  std::vector<Factor> factors;  // plain traces: one factor of all letters
};

class Sampler {
 public:
  Sampler(const Expression& e, const ModelMap& models, int N) : models_(models), N_(N) {
    std::set<std::string> colours;
    for (auto& t : e.traces) {
      TracePlan tp;
      tp.normalized = t.normalized;
      tp.centred = t.centred;
      if (t.centred) {
        for (auto& f : t.factors) tp.factors.push_back({f, centring_constant(f, models, N)});
      } else {
        tp.factors.push_back({t.letters, 0});
      }
      for (auto& l : t.word()) colours.insert(l.colour);
      plans_.push_back(std::move(tp));
    }
    colours_.assign(colours.begin(), colours.end());
    base_.resize(colours_.size());
    for (auto& tp : plans_)
      for (auto& f : tp.factors)
        for (auto& l : f.letters) slot(l);
    mats_.resize(keys_.size());
    dmat_.resize(keys_.size());
    ready_.assign(keys_.size(), false);
    std::size_t most = 0;
    for (auto& tp : plans_) most = std::max(most, tp.factors.size());
    scratch_.resize(most);
  }

  std::vector<double> draw(Rng& rng) {
    for (std::size_t c = 0; c < colours_.size(); ++c) fill_base(c, rng);
    std::fill(ready_.begin(), ready_.end(), false);
    std::vector<double> out;
    out.reserve(plans_.size());
    for (auto& tp : plans_) {
      chain_.clear();
      std::size_t used = 0;
      for (auto& f : tp.factors) {
        if (!tp.centred) {
          for (auto& l : f.letters) chain_.push_back({&letter(l), l.transpose});
          continue;
        }
        Eigen::MatrixXd& prod = scratch_[used++];
        assign(prod, letter(f.letters.front()), f.letters.front().transpose);
        for (std::size_t i = 1; i < f.letters.size(); ++i) multiply(prod, letter(f.letters[i]), f.letters[i].transpose);
        prod.diagonal().array() -= f.kappa;
        chain_.push_back({&prod, false});
      }
      out.push_back(tp.normalized ? chain_trace() / N_ : chain_trace());
    }
    return out;
  }

 private:
  struct Link {
    const Eigen::MatrixXd* m;
    bool transpose;
  };

  std::size_t slot(const Letter& l) {
    auto key = std::make_pair(l.colour, models_.at(l.colour).explicit_d() ? l.label : std::string());
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] == key) return i;
    keys_.push_back(key);
    return keys_.size() - 1;
  }

  std::size_t colour_index(const std::string& c) const {
    return std::lower_bound(colours_.begin(), colours_.end(), c) - colours_.begin();
  }

  void fill_base(std::size_t c, Rng& rng) {
    const auto& model = models_.at(colours_[c]);
    int rows = model.kind == EnsembleKind::Wishart ? wishart_rows(model, N_) : N_;
    Eigen::MatrixXd& g = base_[c];
    g.resize(rows, N_);
    boost::random::normal_distribution<double> nd;
    double* p = g.data();
    for (Eigen::Index i = 0; i < g.size(); ++i) p[i] = nd(rng);
    double s = 1.0 / std::sqrt(static_cast<double>(N_));
    if (model.kind == EnsembleKind::GOE) {
      g += g.transpose().eval();
      g *= s / std::sqrt(2.0);
    } else {
      g *= s;
    }
  }

  const Eigen::MatrixXd& letter(const Letter& l) {
    const auto& model = models_.at(l.colour);
    const Eigen::MatrixXd& base = base_[colour_index(l.colour)];
    if (model.kind != EnsembleKind::Wishart) return base;
    std::size_t i = slot(l);
    if (!ready_[i]) {
      Eigen::MatrixXd& w = mats_[i];
      if (model.explicit_d()) {
        if (dmat_[i].size() == 0) dmat_[i] = to_double_matrix(model.matrix(l.label));
        w.noalias() = base.transpose() * (dmat_[i] * base);
      } else {
        w.setZero(N_, N_);
        w.selfadjointView<Eigen::Lower>().rankUpdate(base.transpose());
        w.triangularView<Eigen::StrictlyUpper>() = w.transpose();
      }
      ready_[i] = true;
    }
    return mats_[i];
  }

  static void assign(Eigen::MatrixXd& dst, const Eigen::MatrixXd& m, bool t) {
    if (t)
      dst = m.transpose();
    else
      dst = m;
  }

  void multiply(Eigen::MatrixXd& acc, const Eigen::MatrixXd& m, bool t) {
    if (t)
      tmp_.noalias() = acc * m.transpose();
    else
      tmp_.noalias() = acc * m;
    acc.swap(tmp_);
  }

  double chain_trace() {
    if (chain_.empty()) return N_;
    if (chain_.size() == 1) return chain_[0].m->trace();
    const Link& last = chain_.back();
    auto with_last = [&](const auto& a) {
      // tr(a·L) = Σ a ∘ Lᵀ
      return last.transpose ? a.cwiseProduct(*last.m).sum() : a.cwiseProduct(last.m->transpose()).sum();
    };
    if (chain_.size() == 2) {
      const Link& f = chain_[0];
      return f.transpose ? with_last(f.m->transpose()) : with_last(*f.m);
    }
    assign(acc_, *chain_[0].m, chain_[0].transpose);
    for (std::size_t i = 1; i + 1 < chain_.size(); ++i) multiply(acc_, *chain_[i].m, chain_[i].transpose);
    return with_last(acc_);
  }

  const ModelMap& models_;
  int N_;
  std::vector<std::string> colours_;
  std::vector<TracePlan> plans_;
  std::vector<std::pair<std::string, std::string>> keys_;
  std::vector<Eigen::MatrixXd> base_, mats_, dmat_, scratch_;
  std::vector<bool> ready_;
  std::vector<Link> chain_;
  Eigen::MatrixXd acc_, tmp_;
};

}  // namespace

MCEstimate estimate(const Expression& e, const ModelMap& models, int N, const MCOptions& opt) {
  e.validate(models);
  if (e.kind == ExpressionKind::Cumulant && e.order() >= 3)
    throw std::invalid_argument("Monte Carlo cumulants of order 3 or more are not supported");
  if (opt.samples < 2) throw std::invalid_argument("at least two samples are needed");
  if (opt.block == 0) throw std::invalid_argument("block size must be positive");
  bool covariance = e.kind == ExpressionKind::Cumulant && e.order() == 2;

  Sampler proto(e, models, N);
  std::size_t n = opt.samples;
  std::vector<double> x(n), y(n);
  std::size_t blocks = (n + opt.block - 1) / opt.block;
  unsigned threads = std::max(1u, opt.threads);

  auto worker = [&](unsigned t) {
    Sampler s = proto;
    for (std::size_t b = t; b < blocks; b += threads) {
      Rng rng(block_seed(opt.seed, b));
      std::size_t end = std::min(n, (b + 1) * opt.block);
      for (std::size_t i = b * opt.block; i < end; ++i) {
        auto v = s.draw(rng);
        if (covariance) {
          x[i] = v[0];
          y[i] = v[1];
        } else {
          double prod = 1;
          for (double d : v) prod *= d;
          x[i] = prod;
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  MCEstimate est;
  est.samples = n;
  est.seed = opt.seed;
  est.target = e.to_string();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = covariance ? (x[i] - mx) * (y[i] - my) : x[i];
  double mz = 0;
  for (double v : z) mz += v;
  mz /= n;
  double ss = 0;
  for (double v : z) ss += (v - mz) * (v - mz);
  double sd = std::sqrt(ss / (n - 1));
  est.mean = covariance ? mz * n / (n - 1) : mz;
  est.std_error = sd / std::sqrt(static_cast<double>(n));
  return est;
}

}  // namespace rsf
