// SPDX-License-Identifier: Apache-2.0
#include "evc/coupling.hpp"

#include "evc/error.hpp"

namespace evc {

Coupling::Coupling(ProbMeasure mu, ProbMeasure nu) : mu_(std::move(mu)), nu_(std::move(nu)) {
  require_same_space(mu_, nu_);
}

void Coupling::add(std::size_t x, std::size_t y, const Rational& w) {
  if (w.sign() < 0) {
    fail(Errc::negative_weight, "negative joint weight " + w.to_string());
  }
  if (w.is_zero()) return;
  joint_[{x, y}] += w;
}

Rational Coupling::at(std::size_t x, std::size_t y) const {
  auto it = joint_.find({x, y});
  return it == joint_.end() ? Rational(0) : it->second;
}

Rational Coupling::total_mass() const {
  Rational total(0);
  for (const auto& [cell, w] : joint_) {
    (void)cell;
    total += w;
  }
  return total;
}

Rational Coupling::relation_mass() const {
  const auto& sp = space();
  Rational total(0);
  for (const auto& [cell, w] : joint_) {
    if (sp->same_class(cell.first, cell.second)) total += w;
  }
  return total;
}

Rational Coupling::flow_out_of(const SaturatedSet& a) const {
  Rational total(0);
  for (const auto& [cell, w] : joint_) {
    if (a.contains_point(cell.first) && !a.contains_point(cell.second)) total += w;
  }
  return total;
}

bool MarginalReport::all_zero() const {
  for (const auto& r : row_residual) {
    if (!r.is_zero()) return false;
  }
  for (const auto& r : col_residual) {
    if (!r.is_zero()) return false;
  }
  return true;
}

MarginalReport validate_coupling(const Coupling& p) {
  std::size_t n = p.space()->point_count();
  std::vector<Rational> row(n, Rational(0)), col(n, Rational(0));
  for (const auto& [cell, w] : p.joint()) {
    row[cell.first] += w;
    col[cell.second] += w;
  }
  for (std::size_t i = 0; i < n; ++i) {
    row[i] -= p.mu().weight(i);
    col[i] -= p.nu().weight(i);
  }
  return MarginalReport{std::move(row), std::move(col)};
}

Rational coupling_cost(const Coupling& p) {
  if (!validate_coupling(p).all_zero()) {
    fail(Errc::invalid_coupling, "joint table does not have the intended marginals");
  }
  return Rational(1) - p.relation_mass();
}

namespace {

// Northwest-corner fill: match row and column targets (equal totals) in the
// given order. Targets may contain zeros.
void northwest_fill(Coupling& out, const std::vector<std::pair<std::size_t, Rational>>& rows,
                    const std::vector<std::pair<std::size_t, Rational>>& cols) {
  std::size_t i = 0, j = 0;
  Rational ri = rows.empty() ? Rational(0) : rows[0].second;
  Rational cj = cols.empty() ? Rational(0) : cols[0].second;
  while (i < rows.size() && j < cols.size()) {
    if (ri.is_zero()) {
      if (++i < rows.size()) ri = rows[i].second;
      continue;
    }
    if (cj.is_zero()) {
      if (++j < cols.size()) cj = cols[j].second;
      continue;
    }
    Rational w = Rational::min(ri, cj);
    out.add(rows[i].first, cols[j].first, w);
    ri -= w;
    cj -= w;
  }
}

}  // namespace

Coupling optimal_coupling(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  const auto& space = mu.space();
  auto mu_hat = pushforward(mu);
  auto nu_hat = pushforward(nu);

  Coupling out(mu, nu);
  std::vector<Rational> row_left(mu.weights());
  std::vector<Rational> col_left(nu.weights());

  for (std::size_t c = 0; c < space->class_count(); ++c) {
    Rational shared = Rational::min(mu_hat.class_mass[c], nu_hat.class_mass[c]);
    if (shared.is_zero()) continue;
    Rational row_scale = shared / mu_hat.class_mass[c];
    Rational col_scale = shared / nu_hat.class_mass[c];
    std::vector<std::pair<std::size_t, Rational>> rows, cols;
    for (std::size_t p : space->class_members(c)) {
      Rational r = mu.weight(p) * row_scale;
      Rational s = nu.weight(p) * col_scale;
      rows.emplace_back(p, r);
      cols.emplace_back(p, s);
      row_left[p] -= r;
      col_left[p] -= s;
    }
    northwest_fill(out, rows, cols);
  }

  // Excess mass lives in classes where one marginal dominates the other, so
  // every leftover match is a cross-class pair.
  std::vector<std::pair<std::size_t, Rational>> rows, cols;
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    if (!row_left[p].is_zero()) rows.emplace_back(p, row_left[p]);
    if (!col_left[p].is_zero()) cols.emplace_back(p, col_left[p]);
  }
  northwest_fill(out, rows, cols);
  return out;
}

}  // namespace evc
