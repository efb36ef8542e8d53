/*
 * Copyright 2026 The Graphleak Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "graphleak/autodiff.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphleak/error.h"
#include "graphleak/rng.h"

namespace graphleak {
namespace ad {

using internal::Node;
using NodePtr = std::shared_ptr<Node>;

std::shared_ptr<Node> NodeOf(const Var& v) {
  if (!v.node_) throw InvalidArgument("autodiff: use of an empty Var");
  return v.node_;
}

Var MakeResult(Tensor value, std::initializer_list<const Var*> inputs,
               std::function<void(const Tensor&)> backward) {
  if (!value.AllFinite()) {
    throw NumericalError("autodiff: non-finite value produced " +
                         value.ShapeString());
  }
  Tape* tape = nullptr;
  for (const Var* in : inputs) {
    if (!in->requires_grad()) continue;
    if (tape != nullptr && in->tape_ != tape) {
      throw InvalidArgument("autodiff: operands recorded on different tapes");
    }
    tape = in->tape_;
  }
  Var out;
  out.node_ = std::make_shared<Node>();
  out.node_->value = std::move(value);
  if (tape == nullptr) return out;
  out.node_->requires_grad = true;
  out.node_->backward = std::move(backward);
  out.tape_ = tape;
  tape->nodes_.push_back(out.node_);
  tape->consumed_ = false;
  return out;
}

Var Tape::Variable(Tensor value) {
  Var v;
  v.node_ = std::make_shared<Node>();
  v.node_->value = std::move(value);
  v.node_->requires_grad = true;
  v.tape_ = this;
  nodes_.push_back(v.node_);
  consumed_ = false;
  return v;
}

Var Tape::Constant(Tensor value) {
  Var v;
  v.node_ = std::make_shared<Node>();
  v.node_->value = std::move(value);
  return v;
}

void Tape::Backward(const Var& loss) {
  if (!loss.valid() || loss.tape_ != this) {
    throw InvalidArgument("Backward: loss was not recorded on this tape");
  }
  if (loss.value().size() != 1) {
    throw InvalidArgument("Backward: loss must be scalar, got " +
                          loss.value().ShapeString());
  }
  if (consumed_) {
    throw InvalidArgument(
        "Backward: tape already consumed; record a new forward pass first");
  }
  size_t end = nodes_.size();
  for (auto& n : nodes_) n->grad = Tensor(n->value.rows(), n->value.cols());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == loss.node_) end = i + 1;
  }
  loss.node_->grad[0] = 1.0;
  for (size_t i = end; i-- > 0;) {
    Node& n = *nodes_[i];
    if (n.backward) n.backward(n.grad);
  }
  consumed_ = true;
}

namespace {

void Accumulate(const NodePtr& n, const Tensor& g) {
  if (n->requires_grad) AddInPlace(n->grad, g);
}

void RequireSameShape(const Var& a, const Var& b, const char* op) {
  if (!a.value().SameShape(b.value())) {
    throw InvalidArgument(std::string(op) + ": shape mismatch " +
                          a.value().ShapeString() + " vs " +
                          b.value().ShapeString());
  }
}

}  // namespace

Var MatMul(const Var& a, const Var& b) {
  NodePtr na = NodeOf(a), nb = NodeOf(b);
  Tensor out = graphleak::MatMul(na->value, nb->value);
  return MakeResult(std::move(out), {&a, &b}, [na, nb](const Tensor& g) {
    if (na->requires_grad) AddInPlace(na->grad, MatMulTransposeB(g, nb->value));
    if (nb->requires_grad) AddInPlace(nb->grad, MatMulTransposeA(na->value, g));
  });
}

Var Add(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Add");
  NodePtr na = NodeOf(a), nb = NodeOf(b);
  Tensor out = na->value;
  AddInPlace(out, nb->value);
  return MakeResult(std::move(out), {&a, &b}, [na, nb](const Tensor& g) {
    Accumulate(na, g);
    Accumulate(nb, g);
  });
}

Var Sub(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Sub");
  NodePtr na = NodeOf(a), nb = NodeOf(b);
  Tensor out = na->value;
  AddInPlace(out, nb->value, -1.0);
  return MakeResult(std::move(out), {&a, &b}, [na, nb](const Tensor& g) {
    Accumulate(na, g);
    if (nb->requires_grad) AddInPlace(nb->grad, g, -1.0);
  });
}

Var Mul(const Var& a, const Var& b) {
  RequireSameShape(a, b, "Mul");
  NodePtr na = NodeOf(a), nb = NodeOf(b);
  Tensor out = na->value;
  for (size_t i = 0; i < out.size(); ++i) out[i] *= nb->value[i];
  return MakeResult(std::move(out), {&a, &b}, [na, nb](const Tensor& g) {
    if (na->requires_grad) {
      for (size_t i = 0; i < g.size(); ++i) na->grad[i] += g[i] * nb->value[i];
    }
    if (nb->requires_grad) {
      for (size_t i = 0; i < g.size(); ++i) nb->grad[i] += g[i] * na->value[i];
    }
  });
}

Var AddRowVector(const Var& x, const Var& row) {
  NodePtr nx = NodeOf(x), nr = NodeOf(row);
  if (nr->value.rows() != 1 || nr->value.cols() != nx->value.cols()) {
    throw InvalidArgument("AddRowVector: " + nr->value.ShapeString() +
                          " does not broadcast over " +
                          nx->value.ShapeString());
  }
  Tensor out = nx->value;
  for (size_t i = 0; i < out.rows(); ++i) {
    auto r = out.Row(i);
    for (size_t j = 0; j < r.size(); ++j) r[j] += nr->value[j];
  }
  return MakeResult(std::move(out), {&x, &row}, [nx, nr](const Tensor& g) {
    Accumulate(nx, g);
    if (nr->requires_grad) {
      for (size_t i = 0; i < g.rows(); ++i) {
        auto gr = g.Row(i);
        for (size_t j = 0; j < gr.size(); ++j) nr->grad[j] += gr[j];
      }
    }
  });
}

Var Scale(const Var& x, double factor) {
  NodePtr nx = NodeOf(x);
  Tensor out = nx->value;
  for (double& v : out.data()) v *= factor;
  return MakeResult(std::move(out), {&x}, [nx, factor](const Tensor& g) {
    if (nx->requires_grad) AddInPlace(nx->grad, g, factor);
  });
}

Var AddScalar(const Var& x, double c) {
  NodePtr nx = NodeOf(x);
  Tensor out = nx->value;
  for (double& v : out.data()) v += c;
  return MakeResult(std::move(out), {&x},
                    [nx](const Tensor& g) { Accumulate(nx, g); });
}

Var Sum(const Var& x) {
  NodePtr nx = NodeOf(x);
  double total = 0.0;
  for (double v : nx->value.data()) total += v;
  return MakeResult(Tensor::Scalar(total), {&x}, [nx](const Tensor& g) {
    if (!nx->requires_grad) return;
    const double s = g[0];
    for (double& v : nx->grad.data()) v += s;
  });
}

Var RowSum(const Var& x) {
  NodePtr nx = NodeOf(x);
  Tensor out(nx->value.rows(), 1);
  for (size_t i = 0; i < out.rows(); ++i) {
    double total = 0.0;
    for (double v : nx->value.Row(i)) total += v;
    out[i] = total;
  }
  return MakeResult(std::move(out), {&x}, [nx](const Tensor& g) {
    if (!nx->requires_grad) return;
    for (size_t i = 0; i < g.rows(); ++i) {
      for (double& v : nx->grad.Row(i)) v += g[i];
    }
  });
}

Var MeanRowGroups(const Var& x, size_t group) {
  NodePtr nx = NodeOf(x);
  if (group == 0 || nx->value.rows() % group != 0) {
    throw InvalidArgument("MeanRowGroups: rows not divisible by group");
  }
  const size_t groups = nx->value.rows() / group;
  const size_t n = nx->value.cols();
  const double inv = 1.0 / static_cast<double>(group);
  Tensor out(groups, n);
  for (size_t b = 0; b < groups; ++b) {
    auto o = out.Row(b);
    for (size_t t = 0; t < group; ++t) {
      auto r = nx->value.Row(b * group + t);
      for (size_t j = 0; j < n; ++j) o[j] += r[j];
    }
    for (double& v : o) v *= inv;
  }
  return MakeResult(std::move(out), {&x},
                    [nx, group, inv](const Tensor& g) {
                      if (!nx->requires_grad) return;
                      for (size_t b = 0; b < g.rows(); ++b) {
                        auto gr = g.Row(b);
                        for (size_t t = 0; t < group; ++t) {
                          auto d = nx->grad.Row(b * group + t);
                          for (size_t j = 0; j < d.size(); ++j) {
                            d[j] += inv * gr[j];
                          }
                        }
                      }
                    });
}

Var GatherRows(const Var& x, std::span<const size_t> index) {
  NodePtr nx = NodeOf(x);
  const size_t n = nx->value.cols();
  Tensor out(index.size(), n);
  for (size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= nx->value.rows()) {
      throw InvalidArgument("GatherRows: index out of range");
    }
    std::copy_n(nx->value.Row(index[i]).data(), n, out.Row(i).data());
  }
  std::vector<size_t> idx(index.begin(), index.end());
  return MakeResult(std::move(out), {&x},
                    [nx, idx = std::move(idx)](const Tensor& g) {
                      if (!nx->requires_grad) return;
                      for (size_t i = 0; i < idx.size(); ++i) {
                        auto d = nx->grad.Row(idx[i]);
                        auto s = g.Row(i);
                        for (size_t j = 0; j < d.size(); ++j) d[j] += s[j];
                      }
                    });
}

Var SliceCols(const Var& x, size_t begin, size_t end) {
  NodePtr nx = NodeOf(x);
  if (begin > end || end > nx->value.cols()) {
    throw InvalidArgument("SliceCols: bad range");
  }
  const size_t w = end - begin;
  Tensor out(nx->value.rows(), w);
  for (size_t i = 0; i < out.rows(); ++i) {
    std::copy_n(nx->value.Row(i).data() + begin, w, out.Row(i).data());
  }
  return MakeResult(std::move(out), {&x}, [nx, begin, w](const Tensor& g) {
    if (!nx->requires_grad) return;
    for (size_t i = 0; i < g.rows(); ++i) {
      double* d = nx->grad.Row(i).data() + begin;
      auto s = g.Row(i);
      for (size_t j = 0; j < w; ++j) d[j] += s[j];
    }
  });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw InvalidArgument("ConcatCols: no inputs");
  std::vector<NodePtr> nodes;
  size_t total = 0;
  const size_t rows = parts[0].rows();
  for (const Var& p : parts) {
    nodes.push_back(NodeOf(p));
    if (p.rows() != rows) throw InvalidArgument("ConcatCols: row mismatch");
    total += p.cols();
  }
  Tensor out(rows, total);
  size_t offset = 0;
  for (const NodePtr& n : nodes) {
    for (size_t i = 0; i < rows; ++i) {
      std::copy_n(n->value.Row(i).data(), n->value.cols(),
                  out.Row(i).data() + offset);
    }
    offset += n->value.cols();
  }
  // The result is recorded on the tape shared by the grad-requiring parts.
  Tape* tape = nullptr;
  const Var* any = &parts[0];
  for (const Var& p : parts) {
    if (!p.requires_grad()) continue;
    if (tape != nullptr && p.tape() != tape) {
      throw InvalidArgument("ConcatCols: operands on different tapes");
    }
    tape = p.tape();
    any = &p;
  }
  return MakeResult(std::move(out), {any}, [nodes](const Tensor& g) {
    size_t off = 0;
    for (const NodePtr& n : nodes) {
      const size_t w = n->value.cols();
      if (n->requires_grad) {
        for (size_t i = 0; i < g.rows(); ++i) {
          auto d = n->grad.Row(i);
          const double* s = g.Row(i).data() + off;
          for (size_t j = 0; j < w; ++j) d[j] += s[j];
        }
      }
      off += w;
    }
  });
}

Var Apply(const Var& x, Activation act) {
  NodePtr nx = NodeOf(x);
  Tensor out = nx->value;
  auto in = nx->value.data();
  auto o = out.data();
  switch (act.kind) {
    case ActivationKind::kRelu:
      for (double& v : o) v = v > 0.0 ? v : 0.0;
      break;
    case ActivationKind::kElu:
      for (double& v : o) v = v > 0.0 ? v : std::expm1(v);
      break;
    case ActivationKind::kLeakyRelu:
      for (double& v : o) v = v > 0.0 ? v : act.slope * v;
      break;
    case ActivationKind::kExp:
      for (double& v : o) v = std::exp(v);
      break;
    case ActivationKind::kLog:
      for (size_t i = 0; i < in.size(); ++i) {
        if (!(in[i] > 0.0)) {
          throw InvalidArgument("Apply(log): nonpositive input " +
                                std::to_string(in[i]));
        }
        o[i] = std::log(in[i]);
      }
      break;
    case ActivationKind::kTanh:
      for (double& v : o) v = std::tanh(v);
      break;
  }
  Tensor saved = out;
  return MakeResult(
      std::move(out), {&x}, [nx, act, saved = std::move(saved)](const Tensor& g) {
        if (!nx->requires_grad) return;
        auto in = nx->value.data();
        auto d = nx->grad.data();
        for (size_t i = 0; i < g.size(); ++i) {
          double deriv = 0.0;
          switch (act.kind) {
            case ActivationKind::kRelu:
              deriv = in[i] > 0.0 ? 1.0 : 0.0;
              break;
            case ActivationKind::kElu:
              deriv = in[i] > 0.0 ? 1.0 : saved[i] + 1.0;
              break;
            case ActivationKind::kLeakyRelu:
              deriv = in[i] > 0.0 ? 1.0 : act.slope;
              break;
            case ActivationKind::kExp:
              deriv = saved[i];
              break;
            case ActivationKind::kLog:
              deriv = 1.0 / in[i];
              break;
            case ActivationKind::kTanh:
              deriv = 1.0 - saved[i] * saved[i];
              break;
          }
          d[i] += g[i] * deriv;
        }
      });
}

Var SoftmaxRows(const Var& logits) {
  NodePtr nx = NodeOf(logits);
  Tensor out = graphleak::SoftmaxRows(nx->value);
  Tensor saved = out;
  return MakeResult(std::move(out), {&logits},
                    [nx, y = std::move(saved)](const Tensor& g) {
                      if (!nx->requires_grad) return;
                      for (size_t i = 0; i < g.rows(); ++i) {
                        auto yr = y.Row(i);
                        auto gr = g.Row(i);
                        double dot = 0.0;
                        for (size_t j = 0; j < yr.size(); ++j) {
                          dot += gr[j] * yr[j];
                        }
                        auto d = nx->grad.Row(i);
                        for (size_t j = 0; j < yr.size(); ++j) {
                          d[j] += yr[j] * (gr[j] - dot);
                        }
                      }
                    });
}

Var CrossEntropy(const Var& probs, std::span<const int> labels,
                 const std::vector<bool>& mask) {
  NodePtr np = NodeOf(probs);
  const Tensor& p = np->value;
  if (labels.size() != p.rows() || mask.size() != p.rows()) {
    throw InvalidArgument("CrossEntropy: labels/mask length mismatch");
  }
  std::vector<size_t> rows;
  for (size_t i = 0; i < p.rows(); ++i) {
    if (!mask[i]) continue;
    if (labels[i] < 0 || static_cast<size_t>(labels[i]) >= p.cols()) {
      throw InvalidArgument("CrossEntropy: label " + std::to_string(labels[i]) +
                            " out of range");
    }
    rows.push_back(i);
  }
  if (rows.empty()) throw InvalidArgument("CrossEntropy: empty mask");
  double total = 0.0;
  for (size_t i : rows) {
    total -= std::log(std::max(p(i, labels[i]), kProbabilityFloor));
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  std::vector<int> lab(labels.begin(), labels.end());
  return MakeResult(
      Tensor::Scalar(total * inv), {&probs},
      [np, rows = std::move(rows), lab = std::move(lab), inv](const Tensor& g) {
        if (!np->requires_grad) return;
        for (size_t i : rows) {
          const double pv = np->value(i, lab[i]);
          if (pv > kProbabilityFloor) np->grad(i, lab[i]) -= g[0] * inv / pv;
        }
      });
}

Var RowCosine(const Var& a, const Var& b) {
  RequireSameShape(a, b, "RowCosine");
  NodePtr na = NodeOf(a), nb = NodeOf(b);
  const size_t m = na->value.rows();
  Tensor out(m, 1);
  std::vector<double> norm_a(m), norm_b(m);
  for (size_t i = 0; i < m; ++i) {
    auto ra = na->value.Row(i);
    auto rb = nb->value.Row(i);
    double dot = 0.0, aa = 0.0, bb = 0.0;
    for (size_t j = 0; j < ra.size(); ++j) {
      dot += ra[j] * rb[j];
      aa += ra[j] * ra[j];
      bb += rb[j] * rb[j];
    }
    if (aa == 0.0 || bb == 0.0) {
      throw InvalidArgument("RowCosine: zero-norm row " + std::to_string(i));
    }
    norm_a[i] = std::sqrt(aa);
    norm_b[i] = std::sqrt(bb);
    out[i] = dot / (norm_a[i] * norm_b[i]);
  }
  Tensor cos = out;
  return MakeResult(
      std::move(out), {&a, &b},
      [na, nb, cos = std::move(cos), norm_a = std::move(norm_a),
       norm_b = std::move(norm_b)](const Tensor& g) {
        for (size_t i = 0; i < g.rows(); ++i) {
          auto ra = na->value.Row(i);
          auto rb = nb->value.Row(i);
          const double inv = 1.0 / (norm_a[i] * norm_b[i]);
          if (na->requires_grad) {
            auto d = na->grad.Row(i);
            const double ca = cos[i] / (norm_a[i] * norm_a[i]);
            for (size_t j = 0; j < d.size(); ++j) {
              d[j] += g[i] * (rb[j] * inv - ca * ra[j]);
            }
          }
          if (nb->requires_grad) {
            auto d = nb->grad.Row(i);
            const double cb = cos[i] / (norm_b[i] * norm_b[i]);
            for (size_t j = 0; j < d.size(); ++j) {
              d[j] += g[i] * (ra[j] * inv - cb * rb[j]);
            }
          }
        }
      });
}

Var Dropout(const Var& x, double p, SeededRng& rng) {
  if (p < 0.0 || p >= 1.0) throw InvalidArgument("Dropout: p must be in [0,1)");
  if (p == 0.0) return x;
  NodePtr nx = NodeOf(x);
  const double keep_scale = 1.0 / (1.0 - p);
  Tensor mask(nx->value.rows(), nx->value.cols());
  for (double& m : mask.data()) m = rng.Bernoulli(p) ? 0.0 : keep_scale;
  Tensor out = nx->value;
  for (size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  return MakeResult(std::move(out), {&x},
                    [nx, mask = std::move(mask)](const Tensor& g) {
                      if (!nx->requires_grad) return;
                      for (size_t i = 0; i < g.size(); ++i) {
                        nx->grad[i] += g[i] * mask[i];
                      }
                    });
}

Var SpMM(const SparseMatrix& s, const Var& d) {
  NodePtr nd = NodeOf(d);
  Tensor out = graphleak::SpMM(s, nd->value);
  const SparseMatrix* sp = &s;
  return MakeResult(std::move(out), {&d}, [nd, sp](const Tensor& g) {
    if (nd->requires_grad) AddInPlace(nd->grad, SpMMTransposed(*sp, g));
  });
}

Var SpMM(const SparseMatrix& pattern, const Var& values, const Var& d) {
  NodePtr nv = NodeOf(values), nd = NodeOf(d);
  if (nv->value.rows() != pattern.nnz() || nv->value.cols() != 1) {
    throw InvalidArgument("SpMM: values must be nnz x 1");
  }
  if (pattern.cols() != nd->value.rows()) {
    throw InvalidArgument("SpMM: dimension mismatch");
  }
  const SparseMatrix* sp = &pattern;
  const auto offsets = pattern.row_offsets();
  const auto cols = pattern.col_indices();
  const size_t n = nd->value.cols();
  Tensor out(pattern.rows(), n);
  for (size_t r = 0; r < pattern.rows(); ++r) {
    double* o = out.Row(r).data();
    for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
      const double v = nv->value[k];
      const double* src = nd->value.Row(cols[k]).data();
      for (size_t j = 0; j < n; ++j) o[j] += v * src[j];
    }
  }
  return MakeResult(
      std::move(out), {&values, &d}, [nv, nd, sp, n](const Tensor& g) {
        const auto offsets = sp->row_offsets();
        const auto cols = sp->col_indices();
        for (size_t r = 0; r < sp->rows(); ++r) {
          const double* gr = g.Row(r).data();
          for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
            if (nv->requires_grad) {
              const double* src = nd->value.Row(cols[k]).data();
              double acc = 0.0;
              for (size_t j = 0; j < n; ++j) acc += gr[j] * src[j];
              nv->grad[k] += acc;
            }
            if (nd->requires_grad) {
              const double v = nv->value[k];
              double* dst = nd->grad.Row(cols[k]).data();
              for (size_t j = 0; j < n; ++j) dst[j] += v * gr[j];
            }
          }
        }
      });
}

Var SegmentSoftmax(const Var& scores, const SparseMatrix& pattern) {
  NodePtr ns = NodeOf(scores);
  if (ns->value.rows() != pattern.nnz() || ns->value.cols() != 1) {
    throw InvalidArgument("SegmentSoftmax: scores must be nnz x 1");
  }
  const auto offsets = pattern.row_offsets();
  Tensor out(pattern.nnz(), 1);
  for (size_t r = 0; r < pattern.rows(); ++r) {
    const size_t b = offsets[r], e = offsets[r + 1];
    if (b == e) continue;
    double mx = ns->value[b];
    for (size_t k = b + 1; k < e; ++k) mx = std::max(mx, ns->value[k]);
    double total = 0.0;
    for (size_t k = b; k < e; ++k) {
      out[k] = std::exp(ns->value[k] - mx);
      total += out[k];
    }
    for (size_t k = b; k < e; ++k) out[k] /= total;
  }
  Tensor saved = out;
  const SparseMatrix* sp = &pattern;
  return MakeResult(std::move(out), {&scores},
                    [ns, sp, y = std::move(saved)](const Tensor& g) {
                      if (!ns->requires_grad) return;
                      const auto offsets = sp->row_offsets();
                      for (size_t r = 0; r < sp->rows(); ++r) {
                        double dot = 0.0;
                        for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
                          dot += g[k] * y[k];
                        }
                        for (size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
                          ns->grad[k] += y[k] * (g[k] - dot);
                        }
                      }
                    });
}

Var HeadScores(const Var& z, const Var& a) {
  NodePtr nz = NodeOf(z), na = NodeOf(a);
  const size_t heads = na->value.rows();
  const size_t f = na->value.cols();
  if (heads * f != nz->value.cols()) {
    throw InvalidArgument("HeadScores: z has " +
                          std::to_string(nz->value.cols()) +
                          " columns, expected heads*F = " +
                          std::to_string(heads * f));
  }
  Tensor out(nz->value.rows(), heads);
  for (size_t i = 0; i < out.rows(); ++i) {
    auto zr = nz->value.Row(i);
    for (size_t h = 0; h < heads; ++h) {
      double acc = 0.0;
      for (size_t j = 0; j < f; ++j) acc += zr[h * f + j] * na->value(h, j);
      out(i, h) = acc;
    }
  }
  return MakeResult(std::move(out), {&z, &a},
                    [nz, na, heads, f](const Tensor& g) {
                      for (size_t i = 0; i < g.rows(); ++i) {
                        auto zr = nz->value.Row(i);
                        for (size_t h = 0; h < heads; ++h) {
                          const double gv = g(i, h);
                          if (nz->requires_grad) {
                            auto d = nz->grad.Row(i);
                            for (size_t j = 0; j < f; ++j) {
                              d[h * f + j] += gv * na->value(h, j);
                            }
                          }
                          if (na->requires_grad) {
                            for (size_t j = 0; j < f; ++j) {
                              na->grad(h, j) += gv * zr[h * f + j];
                            }
                          }
                        }
                      }
                    });
}

Var FeatureTokens(const Var& x, const Var& emb, const Var& bias) {
  NodePtr nx = NodeOf(x), ne = NodeOf(emb), nb = NodeOf(bias);
  const size_t batch = nx->value.rows();
  const size_t f = nx->value.cols();
  const size_t dim = ne->value.cols();
  if (ne->value.rows() != f || !nb->value.SameShape(ne->value)) {
    throw InvalidArgument("FeatureTokens: embedding must be F x D, got " +
                          ne->value.ShapeString() + " for F=" +
                          std::to_string(f));
  }
  Tensor out(batch * f, dim);
  for (size_t b = 0; b < batch; ++b) {
    for (size_t i = 0; i < f; ++i) {
      const double xv = nx->value(b, i);
      auto o = out.Row(b * f + i);
      auto e = ne->value.Row(i);
      auto c = nb->value.Row(i);
      for (size_t j = 0; j < dim; ++j) o[j] = xv * e[j] + c[j];
    }
  }
  return MakeResult(
      std::move(out), {&x, &emb, &bias},
      [nx, ne, nb, batch, f, dim](const Tensor& g) {
        for (size_t b = 0; b < batch; ++b) {
          for (size_t i = 0; i < f; ++i) {
            auto gr = g.Row(b * f + i);
            const double xv = nx->value(b, i);
            if (nx->requires_grad) {
              auto e = ne->value.Row(i);
              double acc = 0.0;
              for (size_t j = 0; j < dim; ++j) acc += gr[j] * e[j];
              nx->grad(b, i) += acc;
            }
            if (ne->requires_grad) {
              auto d = ne->grad.Row(i);
              for (size_t j = 0; j < dim; ++j) d[j] += xv * gr[j];
            }
            if (nb->requires_grad) {
              auto d = nb->grad.Row(i);
              for (size_t j = 0; j < dim; ++j) d[j] += gr[j];
            }
          }
        }
      });
}

Var MultiHeadSelfAttention(const Var& q, const Var& k, const Var& v,
                           size_t group, size_t heads) {
  RequireSameShape(q, k, "MultiHeadSelfAttention");
  RequireSameShape(q, v, "MultiHeadSelfAttention");
  NodePtr nq = NodeOf(q), nk = NodeOf(k), nv = NodeOf(v);
  const size_t rows = nq->value.rows();
  const size_t dim = nq->value.cols();
  if (group == 0 || rows % group != 0) {
    throw InvalidArgument("MultiHeadSelfAttention: rows not divisible by group");
  }
  if (heads == 0 || dim % heads != 0) {
    throw InvalidArgument(
        "MultiHeadSelfAttention: model dim not divisible by heads");
  }
  const size_t batch = rows / group;
  const size_t hd = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(hd));
  // Attention weights, laid out [batch][head][query][key].
  auto weights = std::make_shared<std::vector<double>>(batch * heads * group *
                                                       group);
  Tensor out(rows, dim);
  std::vector<double> srow(group);
  for (size_t b = 0; b < batch; ++b) {
    for (size_t h = 0; h < heads; ++h) {
      double* w = weights->data() + ((b * heads + h) * group) * group;
      for (size_t i = 0; i < group; ++i) {
        const double* qi = nq->value.Row(b * group + i).data() + h * hd;
        double mx = -INFINITY;
        for (size_t j = 0; j < group; ++j) {
          const double* kj = nk->value.Row(b * group + j).data() + h * hd;
          double acc = 0.0;
          for (size_t t = 0; t < hd; ++t) acc += qi[t] * kj[t];
          srow[j] = acc * scale;
          mx = std::max(mx, srow[j]);
        }
        double total = 0.0;
        for (size_t j = 0; j < group; ++j) {
          srow[j] = std::exp(srow[j] - mx);
          total += srow[j];
        }
        double* oi = out.Row(b * group + i).data() + h * hd;
        for (size_t j = 0; j < group; ++j) {
          const double a = srow[j] / total;
          w[i * group + j] = a;
          const double* vj = nv->value.Row(b * group + j).data() + h * hd;
          for (size_t t = 0; t < hd; ++t) oi[t] += a * vj[t];
        }
      }
    }
  }
  return MakeResult(
      std::move(out), {&q, &k, &v},
      [nq, nk, nv, weights, batch, heads, group, hd, scale](const Tensor& g) {
        std::vector<double> da(group), ds(group);
        for (size_t b = 0; b < batch; ++b) {
          for (size_t h = 0; h < heads; ++h) {
            const double* w = weights->data() + ((b * heads + h) * group) * group;
            for (size_t i = 0; i < group; ++i) {
              const double* gi = g.Row(b * group + i).data() + h * hd;
              // dA[i, j] = <dO_i, V_j>; dV_j += A[i, j] dO_i.
              double dot = 0.0;
              for (size_t j = 0; j < group; ++j) {
                const double* vj = nv->value.Row(b * group + j).data() + h * hd;
                double acc = 0.0;
                for (size_t t = 0; t < hd; ++t) acc += gi[t] * vj[t];
                da[j] = acc;
                dot += acc * w[i * group + j];
                if (nv->requires_grad) {
                  double* dvj = nv->grad.Row(b * group + j).data() + h * hd;
                  for (size_t t = 0; t < hd; ++t) {
                    dvj[t] += w[i * group + j] * gi[t];
                  }
                }
              }
              for (size_t j = 0; j < group; ++j) {
                ds[j] = w[i * group + j] * (da[j] - dot) * scale;
              }
              const double* qi = nq->value.Row(b * group + i).data() + h * hd;
              for (size_t j = 0; j < group; ++j) {
                const double* kj = nk->value.Row(b * group + j).data() + h * hd;
                if (nq->requires_grad) {
                  double* dqi = nq->grad.Row(b * group + i).data() + h * hd;
                  for (size_t t = 0; t < hd; ++t) dqi[t] += ds[j] * kj[t];
                }
                if (nk->requires_grad) {
                  double* dkj = nk->grad.Row(b * group + j).data() + h * hd;
                  for (size_t t = 0; t < hd; ++t) dkj[t] += ds[j] * qi[t];
                }
              }
            }
          }
        }
      });
}

}  // namespace ad
}  // namespace graphleak
