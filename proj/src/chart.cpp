#include "sympten/chart.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

namespace sympten {

ExprField::ExprField(int n_vars, std::vector<int> shape, std::vector<Expr> entries,
                     DerivativeSupply supply)
    : n_vars_(n_vars), shape_(std::move(shape)), entries_(std::move(entries)), supply_(supply) {
  std::size_t expect = 1;
  for (int d : shape_) expect *= static_cast<std::size_t>(d);
  if (entries_.size() != expect) throw std::invalid_argument("ExprField: entry count mismatch");
  if (supply_.mode == DerivativeSupply::Mode::analytic) {
    grads_.reserve(entries_.size() * static_cast<std::size_t>(n_vars_));
    for (const auto& e : entries_)
      for (int d = 0; d < n_vars_; ++d) grads_.push_back(e.derivative(d));
  }
}

ExprField ExprField::zeros(int n_vars, std::vector<int> shape, DerivativeSupply supply) {
  std::size_t count = 1;
  for (int d : shape) count *= static_cast<std::size_t>(d);
  return ExprField(n_vars, std::move(shape), std::vector<Expr>(count), supply);
}

double ExprField::value(std::size_t flat, const Point& x) const {
  return entries_[flat].eval(std::span<const double>(x.data(), x.size()));
}

double ExprField::partial(std::size_t flat, int dir, const Point& x) const {
  if (supply_.mode == DerivativeSupply::Mode::analytic)
    return grads_[flat * static_cast<std::size_t>(n_vars_) + static_cast<std::size_t>(dir)].eval(
        std::span<const double>(x.data(), x.size()));
  const double h = supply_.step;
  Point xp = x, xm = x;
  auto central = [&](double hh) {
    xp[static_cast<std::size_t>(dir)] = x[static_cast<std::size_t>(dir)] + hh;
    xm[static_cast<std::size_t>(dir)] = x[static_cast<std::size_t>(dir)] - hh;
    return (value(flat, xp) - value(flat, xm)) / (2 * hh);
  };
  if (!supply_.richardson) return central(h);
  const double d1 = central(h), d2 = central(h / 2);
  return (4 * d2 - d1) / 3;
}

void ExprField::values(const Point& x, double* out) const {
  for (std::size_t e = 0; e < entries_.size(); ++e) out[e] = value(e, x);
}

void ExprField::partials(const Point& x, double* out) const {
  const auto ne = entries_.size();
  for (int d = 0; d < n_vars_; ++d)
    for (std::size_t e = 0; e < ne; ++e)
      out[static_cast<std::size_t>(d) * ne + e] = partial(e, d, x);
}

Chart::Chart(int n, std::vector<std::array<double, 2>> domain, ExprField omega_field,
             ExprField gamma_field, DerivativeSupply supply)
    : n_(n),
      domain_(std::move(domain)),
      omega_field_(std::move(omega_field)),
      gamma_field_(std::move(gamma_field)),
      supply_(supply) {
  if (n_ < 1 || n_ > 6) throw std::invalid_argument("Chart: n must be in 1..6");
  if (static_cast<int>(domain_.size()) != dim())
    throw std::invalid_argument("Chart: domain must have 2n intervals");
  for (const auto& iv : domain_)
    if (!(iv[0] < iv[1])) throw std::invalid_argument("Chart: empty domain interval");
  const int m = dim();
  if (omega_field_.shape() != std::vector<int>{m, m})
    throw std::invalid_argument("Chart: omega field must be dim x dim");
  if (gamma_field_.shape() != std::vector<int>{m, m, m})
    throw std::invalid_argument("Chart: gamma field must be dim^3");
}

bool Chart::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (x[static_cast<std::size_t>(i)] < domain_[static_cast<std::size_t>(i)][0] ||
        x[static_cast<std::size_t>(i)] > domain_[static_cast<std::size_t>(i)][1])
      return false;
  return true;
}

void Chart::require_inside(const Point& x) const {
  if (!contains(x)) throw std::out_of_range("Chart: point outside the domain");
}

std::vector<double> Chart::omega(const Point& x) const {
  require_inside(x);
  std::vector<double> out(static_cast<std::size_t>(dim()) * dim());
  omega_field_.values(x, out.data());
  return out;
}

std::vector<double> Chart::domega(const Point& x) const {
  require_inside(x);
  std::vector<double> out(static_cast<std::size_t>(dim()) * dim() * dim());
  omega_field_.partials(x, out.data());
  return out;
}

std::vector<double> Chart::omega_inv(const Point& x) const {
  const int m = dim();
  auto w = omega(x);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mw(
      w.data(), m, m);
  Eigen::MatrixXd inv = mw.fullPivLu().inverse();
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out[static_cast<std::size_t>(a) * m + b] = inv(a, b);
  return out;
}

std::vector<double> Chart::dw3(const Point& x) const {
  const int m = dim();
  auto d = domega(x);
  auto at = [&](int i, int j, int k) {
    return d[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
             static_cast<std::size_t>(k)];
  };
  std::vector<double> out(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
            static_cast<std::size_t>(k)] = at(i, j, k) - at(j, i, k) + at(k, i, j);
  return out;
}

std::vector<double> Chart::base_gamma(const Point& x) const {
  require_inside(x);
  std::vector<double> out(static_cast<std::size_t>(dim()) * dim() * dim());
  gamma_field_.values(x, out.data());
  return out;
}

std::vector<Point> Chart::validation_lattice(int k, std::uint64_t seed) const {
  if (k < 1) throw std::invalid_argument("validation_lattice: k must be >= 1");
  const int m = dim();
  std::vector<Point> pts;
  std::vector<int> counter(static_cast<std::size_t>(m), 0);
  std::size_t total = 1;
  for (int d = 0; d < m; ++d) total *= static_cast<std::size_t>(k);
  pts.reserve(total + 16);
  for (std::size_t it = 0; it < total; ++it) {
    Point x(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
      const auto& iv = domain_[static_cast<std::size_t>(d)];
      x[static_cast<std::size_t>(d)] =
          iv[0] + (iv[1] - iv[0]) * (counter[static_cast<std::size_t>(d)] + 1.0) / (k + 1.0);
    }
    pts.push_back(std::move(x));
    for (int d = m - 1; d >= 0; --d) {
      if (++counter[static_cast<std::size_t>(d)] < k) break;
      counter[static_cast<std::size_t>(d)] = 0;
    }
  }
  std::mt19937_64 rng(seed);
  for (int r = 0; r < 16; ++r) {
    Point x(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
      const auto& iv = domain_[static_cast<std::size_t>(d)];
      std::uniform_real_distribution<double> u(iv[0] + 0.05 * (iv[1] - iv[0]),
                                               iv[1] - 0.05 * (iv[1] - iv[0]));
      x[static_cast<std::size_t>(d)] = u(rng);
    }
    pts.push_back(std::move(x));
  }
  // degenerate or non-antisymmetric omega anywhere on the lattice is an error
  for (const auto& x : pts) {
    auto w = omega(x);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (std::abs(w[static_cast<std::size_t>(a) * m + b] +
                     w[static_cast<std::size_t>(b) * m + a]) > 1e-12)
          throw std::runtime_error("Chart: omega field is not antisymmetric on the lattice");
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mw(
        w.data(), m, m);
    if (std::abs(mw.fullPivLu().determinant()) < 1e-10)
      throw std::runtime_error("Chart: omega field is degenerate on the lattice");
  }
  return pts;
}

namespace {

std::size_t flat3(int m, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
         static_cast<std::size_t>(k);
}

std::vector<int> parse_index_list(const std::string& s, int count, int m) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item) - 1);
  if (static_cast<int>(out.size()) != count)
    throw std::invalid_argument("chart config: bad index list '" + s + "'");
  for (int v : out)
    if (v < 0 || v >= m) throw std::invalid_argument("chart config: index out of range in '" + s + "'");
  return out;
}

}  // namespace

std::shared_ptr<const Chart> load_chart_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("chart config: JSON parse failure: ") + e.what());
  }
  if (!j.contains("n")) throw std::invalid_argument("chart config: missing 'n'");
  const int n = j.at("n").get<int>();
  const int m = 2 * n;
  std::vector<std::array<double, 2>> domain;
  if (j.contains("domain")) {
    for (const auto& iv : j.at("domain"))
      domain.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
  } else {
    domain.assign(static_cast<std::size_t>(m), {-1.0, 1.0});
  }
  DerivativeSupply supply;
  if (j.contains("derivatives")) {
    const auto mode = j.at("derivatives").get<std::string>();
    if (mode == "analytic")
      supply.mode = DerivativeSupply::Mode::analytic;
    else if (mode == "fd")
      supply.mode = DerivativeSupply::Mode::finite_difference;
    else
      throw std::invalid_argument("chart config: derivatives must be 'analytic' or 'fd'");
  }
  if (j.contains("fd_step")) supply.step = j.at("fd_step").get<double>();
  if (j.contains("richardson")) supply.richardson = j.at("richardson").get<bool>();

  std::vector<Expr> omega(static_cast<std::size_t>(m) * m);
  if (!j.contains("omega")) throw std::invalid_argument("chart config: missing 'omega'");
  for (const auto& entry : j.at("omega")) {
    auto idx = parse_index_list(entry.at(0).get<std::string>(), 2, m);
    if (idx[0] >= idx[1])
      throw std::invalid_argument("chart config: omega entries must be upper-triangular (i < j)");
    Expr e = parse_expression(entry.at(1).get<std::string>(), m);
    omega[static_cast<std::size_t>(idx[0]) * m + idx[1]] = e;
    omega[static_cast<std::size_t>(idx[1]) * m + idx[0]] = -e;
  }
  std::vector<Expr> gamma(static_cast<std::size_t>(m) * m * m);
  if (j.contains("gamma")) {
    for (const auto& entry : j.at("gamma")) {
      auto idx = parse_index_list(entry.at(0).get<std::string>(), 3, m);
      // keys are "k,i,j" for Gamma^k_{ij}
      gamma[flat3(m, idx[1], idx[2], idx[0])] = parse_expression(entry.at(1).get<std::string>(), m);
    }
  }
  return std::make_shared<Chart>(n, std::move(domain),
                                 ExprField(m, {m, m}, std::move(omega), supply),
                                 ExprField(m, {m, m, m}, std::move(gamma), supply), supply);
}

std::shared_ptr<const Chart> load_chart_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open chart config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_chart_config(ss.str());
}

Connection base_connection(std::shared_ptr<const Chart> chart) {
  auto c = chart;
  return Connection{c, [c](const Point& x) { return c->base_gamma(x); }, "base"};
}

}  // namespace sympten
