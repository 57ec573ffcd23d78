#include "relframe/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include "relframe/errors.hpp"

namespace relframe {

namespace {

std::string triple(Element a, Element b, Element c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

bool associative_at(const FiniteGroup::Table& t, Element a, Element b, Element c) {
  const auto ab = static_cast<std::size_t>(t[a][b]);
  const auto bc = static_cast<std::size_t>(t[b][c]);
  return t[ab][c] == t[a][bc];
}

}  // namespace

std::size_t FiniteGroup::check(Element g) const {
  if (g < 0 || g >= order()) {
    throw Error(ErrorKind::ValidationError,
                "element " + std::to_string(g) + " is not in a group of order " +
                    std::to_string(order()));
  }
  return static_cast<std::size_t>(g);
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidTable, "cyclic group order must be >= 1");
  Table t(static_cast<std::size_t>(n), std::vector<Element>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return from_table(std::move(t), 0);
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw Error(ErrorKind::InvalidTable, "symmetric group supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const auto index_of = [&](const std::vector<int>& q) {
    return static_cast<Element>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(perms.size(), std::vector<Element>(perms.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < perms.size(); ++a) {
    std::string label;
    for (int v : perms[a]) label += std::to_string(v);
    labels.push_back(label);
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(c);
    }
  }
  return from_table(std::move(t), 0, std::move(labels));
}

FiniteGroup FiniteGroup::from_table(Table table, std::optional<Element> identity,
                                    std::vector<std::string> labels, int associativity_cap) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorKind::InvalidTable, "multiplication table is empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw Error(ErrorKind::InvalidTable, "row " + std::to_string(i) + " has " +
                                               std::to_string(table[i].size()) +
                                               " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n) {
        throw Error(ErrorKind::InvalidTable, "entry (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ") = " +
                                                 std::to_string(table[i][j]) + " out of range");
      }
    }
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw Error(ErrorKind::InvalidTable, "expected " + std::to_string(n) + " labels, got " +
                                             std::to_string(labels.size()));
  }

  const auto is_identity = [&](Element e) {
    for (int g = 0; g < n; ++g) {
      if (table[e][g] != g || table[g][e] != g) return false;
    }
    return true;
  };
  Element e = -1;
  if (identity) {
    if (*identity < 0 || *identity >= n || !is_identity(*identity)) {
      throw Error(ErrorKind::NoIdentity,
                  "element " + std::to_string(*identity) + " is not a two-sided identity");
    }
    e = *identity;
  } else {
    for (int g = 0; g < n && e < 0; ++g) {
      if (is_identity(g)) e = g;
    }
    if (e < 0) throw Error(ErrorKind::NoIdentity, "no element acts as a two-sided identity");
  }

  std::vector<Element> inverse(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (table[g][h] == e && table[h][g] == e) {
        inverse[g] = h;
        break;
      }
    }
    if (inverse[g] < 0) {
      throw Error(ErrorKind::NoInverse, "element " + std::to_string(g) + " has no inverse",
                  {Witness{"element " + std::to_string(g), std::nullopt, static_cast<double>(g)}});
    }
  }

  if (n <= associativity_cap) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (!associative_at(table, a, b, c)) {
            throw Error(ErrorKind::NotAssociative, "fails at " + triple(a, b, c),
                        {Witness{"triple " + triple(a, b, c), std::nullopt, 0.0}});
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0xA550C1A7ULL);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const long samples = static_cast<long>(associativity_cap) * associativity_cap * associativity_cap;
    for (long s = 0; s < samples; ++s) {
      const int a = pick(rng), b = pick(rng), c = pick(rng);
      if (!associative_at(table, a, b, c)) {
        throw Error(ErrorKind::NotAssociative, "fails at " + triple(a, b, c),
                    {Witness{"triple " + triple(a, b, c), std::nullopt, 0.0}});
      }
    }
  }

  FiniteGroup group;
  group.table_ = std::move(table);
  group.identity_ = e;
  group.inverse_ = std::move(inverse);
  if (labels.empty()) {
    for (int g = 0; g < n; ++g) labels.push_back(std::to_string(g));
  }
  group.labels_ = std::move(labels);
  return group;
}

bool FiniteGroup::is_central(Element h) const {
  for (Element g = 0; g < order(); ++g) {
    if (multiply(g, h) != multiply(h, g)) return false;
  }
  return true;
}

std::optional<Element> FiniteGroup::find(const std::string& label_or_id) const {
  for (Element g = 0; g < order(); ++g) {
    if (labels_[static_cast<std::size_t>(g)] == label_or_id) return g;
  }
  try {
    std::size_t pos = 0;
    const int id = std::stoi(label_or_id, &pos);
    if (pos == label_or_id.size() && id >= 0 && id < order()) return id;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

UnitaryRep::UnitaryRep(const FiniteGroup& group, std::vector<ComplexMatrix> matrices, double tol)
    : UnitaryRep(std::make_shared<const FiniteGroup>(group), std::move(matrices), tol) {}

UnitaryRep::UnitaryRep(std::shared_ptr<const FiniteGroup> group,
                       std::vector<ComplexMatrix> matrices, double tol)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  const int n = group_->order();
  if (static_cast<int>(matrices_.size()) != n) {
    throw Error(ErrorKind::InvalidRepresentation,
                "expected " + std::to_string(n) + " matrices, got " +
                    std::to_string(matrices_.size()));
  }
  dim_ = matrices_.front().rows();
  if (dim_ < 1) throw Error(ErrorKind::InvalidRepresentation, "representation dimension must be >= 1");
  for (Element g = 0; g < n; ++g) {
    const auto& u = matrices_[static_cast<std::size_t>(g)];
    if (u.rows() != dim_ || u.cols() != dim_) {
      throw Error(ErrorKind::InvalidRepresentation,
                  "matrix for element " + group_->label(g) + " has the wrong dimension");
    }
    if (!is_unitary(u, tol)) {
      throw Error(ErrorKind::InvalidRepresentation,
                  "matrix for element " + group_->label(g) + " is not unitary",
                  {Witness{"U(" + group_->label(g) + ")", u, 0.0}});
    }
  }
  if (!approx_equal(matrix(group_->identity()), identity(dim_), tol)) {
    throw Error(ErrorKind::InvalidRepresentation, "identity element is not represented by I");
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      const double dev = max_abs_diff(matrix(group_->multiply(g, h)), matrix(g) * matrix(h));
      if (dev > tol) {
        throw Error(ErrorKind::InvalidRepresentation,
                    "homomorphism law fails at (" + group_->label(g) + ", " + group_->label(h) +
                        ")",
                    {Witness{"U(gh) - U(g)U(h)", matrix(group_->multiply(g, h)) - matrix(g) * matrix(h),
                             dev}});
      }
    }
  }
}

const ComplexMatrix& UnitaryRep::matrix(Element g) const {
  if (g < 0 || g >= group_->order()) {
    throw Error(ErrorKind::ValidationError, "element " + std::to_string(g) + " out of range");
  }
  return matrices_[static_cast<std::size_t>(g)];
}

bool UnitaryRep::is_trivial(double tol) const {
  return std::all_of(matrices_.begin(), matrices_.end(),
                     [&](const ComplexMatrix& u) { return approx_equal(u, identity(dim_), tol); });
}

UnitaryRep regular_representation(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<ComplexMatrix> matrices;
  matrices.reserve(static_cast<std::size_t>(n));
  for (Element g = 0; g < n; ++g) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Element h = 0; h < n; ++h) p(group.multiply(g, h), h) = 1.0;
    matrices.push_back(std::move(p));
  }
  return UnitaryRep(group, std::move(matrices));
}

UnitaryRep trivial_representation(const FiniteGroup& group, Index dim) {
  return UnitaryRep(group, std::vector<ComplexMatrix>(static_cast<std::size_t>(group.order()),
                                                      identity(dim)));
}

UnitaryRep representation_from_generators(const FiniteGroup& group, Index dim,
                                          const std::map<Element, ComplexMatrix>& images,
                                          double tol) {
  const int n = group.order();
  std::vector<std::optional<ComplexMatrix>> known(static_cast<std::size_t>(n));
  known[group.identity()] = identity(dim);
  for (const auto& [g, u] : images) {
    if (u.rows() != dim || u.cols() != dim) {
      throw Error(ErrorKind::InvalidRepresentation,
                  "matrix for element " + group.label(g) + " is not " + std::to_string(dim) +
                      "x" + std::to_string(dim));
    }
    known[static_cast<std::size_t>(g)] = u;
  }
  // Breadth-first closure: U(gh) = U(g) U(h) for g in the generating set.
  std::deque<Element> frontier;
  for (Element g = 0; g < n; ++g) {
    if (known[g]) frontier.push_back(g);
  }
  while (!frontier.empty()) {
    const Element h = frontier.front();
    frontier.pop_front();
    for (const auto& [g, u] : images) {
      const Element gh = group.multiply(g, h);
      if (!known[gh]) {
        known[gh] = u * *known[h];
        frontier.push_back(gh);
      }
    }
  }
  std::vector<ComplexMatrix> matrices;
  for (Element g = 0; g < n; ++g) {
    if (!known[g]) {
      throw Error(ErrorKind::InvalidRepresentation,
                  "element " + group.label(g) + " is not generated by the given matrices");
    }
    matrices.push_back(*known[g]);
  }
  return UnitaryRep(group, std::move(matrices), tol);
}

ComplexMatrix act(const UnitaryRep& rep, Element g, const ComplexMatrix& a) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim()) {
    throw Error(ErrorKind::DimensionError,
                "act: operator of dimension " + std::to_string(a.rows()) +
                    " on a representation of dimension " + std::to_string(rep.dim()));
  }
  const auto& u = rep.matrix(g);
  return u * a * u.adjoint();
}

bool same_group(const UnitaryRep& a, const UnitaryRep& b) {
  return a.shared_group() == b.shared_group() || a.group() == b.group();
}

void require_same_group(const UnitaryRep& a, const UnitaryRep& b, const std::string& context) {
  if (!same_group(a, b)) {
    throw Error(ErrorKind::GroupMismatch, context + ": representations of different groups");
  }
}

bool same_representation(const UnitaryRep& a, const UnitaryRep& b, double tol) {
  if (!same_group(a, b) || a.dim() != b.dim()) return false;
  for (Element g = 0; g < a.group().order(); ++g) {
    if (!approx_equal(a.matrix(g), b.matrix(g), tol)) return false;
  }
  return true;
}

UnitaryRep tensor_rep(const UnitaryRep& first, const UnitaryRep& second) {
  require_same_group(first, second, "tensor_rep");
  std::vector<ComplexMatrix> matrices;
  for (Element g = 0; g < first.group().order(); ++g) {
    matrices.push_back(tensor_product(first.matrix(g), second.matrix(g)));
  }
  return UnitaryRep(first.shared_group(), std::move(matrices));
}

}  // namespace relframe
