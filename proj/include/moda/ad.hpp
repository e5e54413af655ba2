#pragma once

#include "moda/common.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

// Minimal reverse-mode autodiff over dense Eigen matrices. A TapeT records a
// graph of matrix-valued nodes; backward() walks it in reverse creation order.
// Kernels are fused at the granularity the motion transformer needs (softmax
// attention, layer norm, RoPE, sliding windows) so tapes stay short.
namespace moda::ad {

template <class S>
class TapeT {
public:
    using Mat = MatT<S>;

    struct Var {
        int i = -1;
        bool valid() const { return i >= 0; }
    };

    TapeT() = default;
    TapeT(const TapeT&) = delete;
    TapeT& operator=(const TapeT&) = delete;

    // When grads are disabled the tape records values only (inference mode).
    void set_grad_enabled(bool on) { grad_enabled_ = on; }
    bool grad_enabled() const { return grad_enabled_; }

    // Free node values/grads as backward consumes them. Leaves are kept.
    void set_release_memory(bool on) { release_memory_ = on; }

    int size() const { return static_cast<int>(nodes_.size()); }

    Var leaf(Mat value, bool needs_grad = false) {
        nodes_.push_back(Node{std::move(value), nullptr, Mat(), nullptr, needs_grad && grad_enabled_, true});
        return Var{size() - 1};
    }

    Var constant(Mat value) { return leaf(std::move(value), false); }

    // Leaf whose storage lives outside the tape (model parameters). The
    // pointee must outlive the tape.
    Var leaf_view(const Mat* value, bool needs_grad = true) {
        nodes_.push_back(Node{Mat(), value, Mat(), nullptr, needs_grad && grad_enabled_, true});
        return Var{size() - 1};
    }

    const Mat& value(Var v) const {
        const Node& n = nodes_[static_cast<std::size_t>(v.i)];
        return n.ext ? *n.ext : n.val;
    }

    const Mat& grad(Var v) const {
        const Node& n = nodes_[static_cast<std::size_t>(v.i)];
        require(n.grad.size() > 0, ErrKind::validation, "grad not populated; run backward first");
        return n.grad;
    }

    bool has_grad(Var v) const { return nodes_[static_cast<std::size_t>(v.i)].grad.size() > 0; }

    // ---- elementwise / linear algebra ----

    Var matmul(Var a, Var b) {
        const Mat& av = value(a);
        const Mat& bv = value(b);
        require(av.cols() == bv.rows(), ErrKind::dimension, "matmul inner dims disagree");
        return make(av * bv, {a, b}, [a, b](TapeT& t, const Mat& g, int self) {
            (void)self;
            if (t.wants(a)) t.grad_ref(a).noalias() += g * t.value(b).transpose();
            if (t.wants(b)) t.grad_ref(b).noalias() += t.value(a).transpose() * g;
        });
    }

    Var add(Var a, Var b) {
        require(same_shape(a, b), ErrKind::dimension, "add shape mismatch");
        return make(value(a) + value(b), {a, b}, [a, b](TapeT& t, const Mat& g, int) {
            if (t.wants(a)) t.grad_ref(a) += g;
            if (t.wants(b)) t.grad_ref(b) += g;
        });
    }

    Var sub(Var a, Var b) {
        require(same_shape(a, b), ErrKind::dimension, "sub shape mismatch");
        return make(value(a) - value(b), {a, b}, [a, b](TapeT& t, const Mat& g, int) {
            if (t.wants(a)) t.grad_ref(a) += g;
            if (t.wants(b)) t.grad_ref(b) -= g;
        });
    }

    Var scale(Var a, S c) {
        return make(value(a) * c, {a}, [a, c](TapeT& t, const Mat& g, int) {
            if (t.wants(a)) t.grad_ref(a) += g * c;
        });
    }

    Var add_const(Var a, S c) {
        return make(value(a).array() + c, {a}, [a](TapeT& t, const Mat& g, int) {
            if (t.wants(a)) t.grad_ref(a) += g;
        });
    }

    Var hadamard(Var a, Var b) {
        require(same_shape(a, b), ErrKind::dimension, "hadamard shape mismatch");
        return make(value(a).cwiseProduct(value(b)), {a, b}, [a, b](TapeT& t, const Mat& g, int) {
            if (t.wants(a)) t.grad_ref(a) += g.cwiseProduct(t.value(b));
            if (t.wants(b)) t.grad_ref(b) += g.cwiseProduct(t.value(a));
        });
    }

    // Broadcast a 1 x C row over every row of x.
    Var add_row(Var x, Var row) {
        const Mat& xv = value(x);
        const Mat& rv = value(row);
        require(rv.rows() == 1 && rv.cols() == xv.cols(), ErrKind::dimension,
                "add_row needs a 1 x C row");
        return make(xv.rowwise() + rv.row(0), {x, row}, [x, row](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x) += g;
            if (t.wants(row)) t.grad_ref(row) += g.colwise().sum();
        });
    }

    // x .* broadcast(row)
    Var scale_rows(Var x, Var row) {
        const Mat& xv = value(x);
        const Mat& rv = value(row);
        require(rv.rows() == 1 && rv.cols() == xv.cols(), ErrKind::dimension,
                "scale_rows needs a 1 x C row");
        Mat out = xv.array().rowwise() * rv.row(0).array();
        return make(std::move(out), {x, row}, [x, row](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x) += (g.array().rowwise() * t.value(row).row(0).array()).matrix();
            if (t.wants(row)) t.grad_ref(row) += g.cwiseProduct(t.value(x)).colwise().sum();
        });
    }

    Var repeat_row(Var row, Eigen::Index n) {
        const Mat& rv = value(row);
        require(rv.rows() == 1, ErrKind::dimension, "repeat_row expects a row vector");
        Mat out = rv.replicate(n, 1);
        return make(std::move(out), {row}, [row](TapeT& t, const Mat& g, int) {
            if (t.wants(row)) t.grad_ref(row) += g.colwise().sum();
        });
    }

    Var select_row(Var table, Eigen::Index r) {
        const Mat& tv = value(table);
        require(r >= 0 && r < tv.rows(), ErrKind::validation, "select_row index out of range");
        return make(tv.row(r), {table}, [table, r](TapeT& t, const Mat& g, int) {
            if (t.wants(table)) t.grad_ref(table).row(r) += g.row(0);
        });
    }

    Var slice_rows(Var x, Eigen::Index start, Eigen::Index len) {
        const Mat& xv = value(x);
        require(start >= 0 && len >= 0 && start + len <= xv.rows(), ErrKind::dimension,
                "slice_rows out of range");
        return make(xv.middleRows(start, len), {x}, [x, start, len](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x).middleRows(start, len) += g;
        });
    }

    Var slice_cols(Var x, Eigen::Index start, Eigen::Index len) {
        const Mat& xv = value(x);
        require(start >= 0 && len >= 0 && start + len <= xv.cols(), ErrKind::dimension,
                "slice_cols out of range");
        return make(xv.middleCols(start, len), {x}, [x, start, len](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x).middleCols(start, len) += g;
        });
    }

    Var gather_cols(Var x, std::vector<int> idx) {
        const Mat& xv = value(x);
        Mat out(xv.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) {
            require(idx[j] >= 0 && idx[j] < xv.cols(), ErrKind::validation,
                    "gather_cols index out of range");
            out.col(static_cast<Eigen::Index>(j)) = xv.col(idx[j]);
        }
        return make(std::move(out), {x}, [x, idx = std::move(idx)](TapeT& t, const Mat& g, int) {
            if (!t.wants(x)) return;
            Mat& gx = t.grad_ref(x);
            for (std::size_t j = 0; j < idx.size(); ++j)
                gx.col(idx[j]) += g.col(static_cast<Eigen::Index>(j));
        });
    }

    Var concat_rows(const std::vector<Var>& parts) {
        require(!parts.empty(), ErrKind::validation, "concat_rows needs at least one part");
        Eigen::Index rows = 0;
        const Eigen::Index cols = value(parts[0]).cols();
        for (Var p : parts) {
            require(value(p).cols() == cols, ErrKind::dimension, "concat_rows width mismatch");
            rows += value(p).rows();
        }
        Mat out(rows, cols);
        std::vector<Eigen::Index> offs;
        Eigen::Index at = 0;
        for (Var p : parts) {
            offs.push_back(at);
            out.middleRows(at, value(p).rows()) = value(p);
            at += value(p).rows();
        }
        return make(std::move(out), parts,
                    [parts, offs = std::move(offs)](TapeT& t, const Mat& g, int) {
                        for (std::size_t j = 0; j < parts.size(); ++j)
                            if (t.wants(parts[j]))
                                t.grad_ref(parts[j]) +=
                                    g.middleRows(offs[j], t.value(parts[j]).rows());
                    });
    }

    // ---- nonlinearities ----

    Var gelu(Var x) {
        const Mat& xv = value(x);
        const S inv_sqrt2 = S(1) / std::sqrt(S(2));
        Mat out = xv.array().unaryExpr([inv_sqrt2](S v) {
            return S(0.5) * v * (S(1) + std::erf(v * inv_sqrt2));
        });
        return make(std::move(out), {x}, [x, inv_sqrt2](TapeT& t, const Mat& g, int) {
            if (!t.wants(x)) return;
            const Mat& xv2 = t.value(x);
            const S inv_sqrt2pi = S(1) / std::sqrt(S(2) * S(M_PI));
            Mat d = xv2.array().unaryExpr([inv_sqrt2, inv_sqrt2pi](S v) {
                return S(0.5) * (S(1) + std::erf(v * inv_sqrt2)) +
                       v * inv_sqrt2pi * std::exp(S(-0.5) * v * v);
            });
            t.grad_ref(x) += g.cwiseProduct(d);
        });
    }

    Var log(Var x) {
        return make(value(x).array().log(), {x}, [x](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x) += g.cwiseQuotient(t.value(x));
        });
    }

    // Gradient is zero outside (lo, hi).
    Var clamp(Var x, S lo, S hi) {
        Mat out = value(x).array().max(lo).min(hi);
        return make(std::move(out), {x}, [x, lo, hi](TapeT& t, const Mat& g, int) {
            if (!t.wants(x)) return;
            const Mat& xv = t.value(x);
            Mat mask = ((xv.array() > lo) && (xv.array() < hi)).template cast<S>();
            t.grad_ref(x) += g.cwiseProduct(mask);
        });
    }

    // Row-wise layer norm without affine parameters.
    Var layer_norm(Var x, S eps = S(1e-5)) {
        const Mat& xv = value(x);
        const Eigen::Index c = xv.cols();
        VecT<S> inv_std(xv.rows());
        Mat xhat(xv.rows(), c);
        for (Eigen::Index r = 0; r < xv.rows(); ++r) {
            const S mu = xv.row(r).mean();
            const S var = (xv.row(r).array() - mu).square().sum() / S(c);
            const S is = S(1) / std::sqrt(var + eps);
            inv_std[r] = is;
            xhat.row(r) = (xv.row(r).array() - mu) * is;
        }
        Mat out = xhat;
        return make(std::move(out), {x},
                    [x, xhat = std::move(xhat), inv_std = std::move(inv_std)](TapeT& t, const Mat& g,
                                                                              int) {
                        if (!t.wants(x)) return;
                        Mat& gx = t.grad_ref(x);
                        const Eigen::Index c = g.cols();
                        for (Eigen::Index r = 0; r < g.rows(); ++r) {
                            const S gm = g.row(r).mean();
                            const S gxm = g.row(r).cwiseProduct(xhat.row(r)).sum() / S(c);
                            gx.row(r) +=
                                ((g.row(r).array() - gm) - xhat.row(r).array() * gxm) * inv_std[r];
                        }
                    });
    }

    // Rows L2-normalized: y_r = x_r / max(||x_r||, eps).
    Var l2_normalize_rows(Var x, S eps = S(1e-12)) {
        const Mat& xv = value(x);
        VecT<S> norms(xv.rows());
        Mat out(xv.rows(), xv.cols());
        for (Eigen::Index r = 0; r < xv.rows(); ++r) {
            const S n = std::max(xv.row(r).norm(), eps);
            norms[r] = n;
            out.row(r) = xv.row(r) / n;
        }
        return make(std::move(out), {x},
                    [x, norms = std::move(norms), eps](TapeT& t, const Mat& g, int self) {
                        if (!t.wants(x)) return;
                        const Mat& xv2 = t.value(x);
                        Mat& gx = t.grad_ref(x);
                        for (Eigen::Index r = 0; r < g.rows(); ++r) {
                            const S n = norms[r];
                            if (xv2.row(r).norm() <= eps) {
                                gx.row(r) += g.row(r) / n;
                            } else {
                                RowT<S> y = xv2.row(r) / n;
                                const S dot = g.row(r).cwiseProduct(y).sum();
                                gx.row(r) += (g.row(r) - dot * y) / n;
                            }
                        }
                        (void)self;
                    });
    }

    // ---- sequence ops ----

    // Forward difference along rows: out has one row fewer.
    Var diff_rows(Var x) {
        const Mat& xv = value(x);
        require(xv.rows() >= 2, ErrKind::dimension, "diff_rows needs at least 2 rows");
        Mat out = xv.bottomRows(xv.rows() - 1) - xv.topRows(xv.rows() - 1);
        return make(std::move(out), {x}, [x](TapeT& t, const Mat& g, int) {
            if (!t.wants(x)) return;
            Mat& gx = t.grad_ref(x);
            gx.bottomRows(g.rows()) += g;
            gx.topRows(g.rows()) -= g;
        });
    }

    // Sliding windows of length w (stride 1), each window flattened row-major:
    // out(i, j*C + c) = x(i + j, c).
    Var sliding_windows(Var x, int w) {
        const Mat& xv = value(x);
        require(w >= 1, ErrKind::validation, "window must be >= 1");
        require(xv.rows() >= w, ErrKind::validation, "sequence shorter than window");
        const Eigen::Index c = xv.cols();
        const Eigen::Index n = xv.rows() - w + 1;
        Mat out(n, w * c);
        for (Eigen::Index i = 0; i < n; ++i)
            for (int j = 0; j < w; ++j) out.block(i, j * c, 1, c) = xv.row(i + j);
        return make(std::move(out), {x}, [x, w](TapeT& t, const Mat& g, int) {
            if (!t.wants(x)) return;
            Mat& gx = t.grad_ref(x);
            const Eigen::Index c = gx.cols();
            for (Eigen::Index i = 0; i < g.rows(); ++i)
                for (int j = 0; j < w; ++j) gx.row(i + j) += g.block(i, j * c, 1, c);
        });
    }

    // ---- attention machinery ----

    // Rotary embedding applied per head over even/odd pairs. positions[r] is
    // the integer position of row r; base is the frequency base.
    Var rope(Var x, const std::vector<int>& positions, int n_heads, S base) {
        const Mat& xv = value(x);
        require(xv.rows() == static_cast<Eigen::Index>(positions.size()), ErrKind::dimension,
                "rope positions must match rows");
        require(xv.cols() % n_heads == 0, ErrKind::config, "d_model not divisible by heads");
        const Eigen::Index hd = xv.cols() / n_heads;
        require(hd % 2 == 0, ErrKind::config, "rope requires even head_dim");
        const Eigen::Index half = hd / 2;
        // Per-row cos/sin for each rotation frequency, shared across heads.
        Mat cs(xv.rows(), half), sn(xv.rows(), half);
        for (Eigen::Index r = 0; r < xv.rows(); ++r) {
            for (Eigen::Index i = 0; i < half; ++i) {
                const S theta = S(positions[r]) *
                                std::pow(base, -S(2 * i) / S(hd));
                cs(r, i) = std::cos(theta);
                sn(r, i) = std::sin(theta);
            }
        }
        Mat out(xv.rows(), xv.cols());
        for (int h = 0; h < n_heads; ++h) {
            for (Eigen::Index i = 0; i < half; ++i) {
                const Eigen::Index c0 = h * hd + 2 * i, c1 = c0 + 1;
                out.col(c0) = xv.col(c0).cwiseProduct(cs.col(i)) - xv.col(c1).cwiseProduct(sn.col(i));
                out.col(c1) = xv.col(c0).cwiseProduct(sn.col(i)) + xv.col(c1).cwiseProduct(cs.col(i));
            }
        }
        return make(std::move(out), {x},
                    [x, n_heads, hd, half, cs = std::move(cs), sn = std::move(sn)](
                        TapeT& t, const Mat& g, int) {
                        if (!t.wants(x)) return;
                        Mat& gx = t.grad_ref(x);
                        for (int h = 0; h < n_heads; ++h) {
                            for (Eigen::Index i = 0; i < half; ++i) {
                                const Eigen::Index c0 = h * hd + 2 * i, c1 = c0 + 1;
                                gx.col(c0) +=
                                    g.col(c0).cwiseProduct(cs.col(i)) + g.col(c1).cwiseProduct(sn.col(i));
                                gx.col(c1) +=
                                    -g.col(c0).cwiseProduct(sn.col(i)) + g.col(c1).cwiseProduct(cs.col(i));
                            }
                        }
                    });
    }

    // Multi-head scaled dot-product attention. q: Lq x d, k/v: Lk x d.
    Var attention(Var q, Var k, Var v, int n_heads) {
        const Mat& qv = value(q);
        const Mat& kv = value(k);
        const Mat& vv = value(v);
        require(qv.cols() == kv.cols() && kv.cols() == vv.cols(), ErrKind::dimension,
                "attention width mismatch");
        require(kv.rows() == vv.rows(), ErrKind::dimension, "attention k/v length mismatch");
        require(qv.cols() % n_heads == 0, ErrKind::config, "d_model not divisible by heads");
        const Eigen::Index hd = qv.cols() / n_heads;
        const S inv_sqrt = S(1) / std::sqrt(S(hd));
        std::vector<Mat> probs(static_cast<std::size_t>(n_heads));
        Mat out(qv.rows(), qv.cols());
        for (int h = 0; h < n_heads; ++h) {
            auto qh = qv.middleCols(h * hd, hd);
            auto kh = kv.middleCols(h * hd, hd);
            auto vh = vv.middleCols(h * hd, hd);
            Mat logits = qh * kh.transpose() * inv_sqrt;
            for (Eigen::Index r = 0; r < logits.rows(); ++r) {
                const S mx = logits.row(r).maxCoeff();
                logits.row(r) = (logits.row(r).array() - mx).exp();
                logits.row(r) /= logits.row(r).sum();
            }
            out.middleCols(h * hd, hd).noalias() = logits * vh;
            probs[static_cast<std::size_t>(h)] = std::move(logits);
        }
        return make(std::move(out), {q, k, v},
                    [q, k, v, n_heads, hd, inv_sqrt, probs = std::move(probs)](TapeT& t, const Mat& g,
                                                                               int) {
                        const bool wq = t.wants(q), wk = t.wants(k), wv = t.wants(v);
                        if (!wq && !wk && !wv) return;
                        const Mat& qv2 = t.value(q);
                        const Mat& kv2 = t.value(k);
                        const Mat& vv2 = t.value(v);
                        for (int h = 0; h < n_heads; ++h) {
                            const Mat& p = probs[static_cast<std::size_t>(h)];
                            auto gh = g.middleCols(h * hd, hd);
                            auto qh = qv2.middleCols(h * hd, hd);
                            auto kh = kv2.middleCols(h * hd, hd);
                            auto vh = vv2.middleCols(h * hd, hd);
                            if (wv) t.grad_ref(v).middleCols(h * hd, hd).noalias() += p.transpose() * gh;
                            if (!wq && !wk) continue;
                            Mat dp = gh * vh.transpose();
                            // softmax backward: ds = p .* (dp - rowsum(dp .* p))
                            VecT<S> rs = dp.cwiseProduct(p).rowwise().sum();
                            Mat ds = p.cwiseProduct(dp.colwise() - rs);
                            if (wq)
                                t.grad_ref(q).middleCols(h * hd, hd).noalias() += ds * kh * inv_sqrt;
                            if (wk)
                                t.grad_ref(k).middleCols(h * hd, hd).noalias() +=
                                    ds.transpose() * qh * inv_sqrt;
                        }
                    });
    }

    // ---- reductions ----

    Var mean_all(Var x) {
        const Mat& xv = value(x);
        Mat out(1, 1);
        out(0, 0) = xv.mean();
        const S inv_n = S(1) / S(xv.size());
        return make(std::move(out), {x}, [x, inv_n](TapeT& t, const Mat& g, int) {
            if (t.wants(x)) t.grad_ref(x).array() += g(0, 0) * inv_n;
        });
    }

    // Mean squared error over all elements.
    Var mse(Var a, Var b) {
        require(same_shape(a, b), ErrKind::dimension, "mse shape mismatch");
        const Mat d = value(a) - value(b);
        Mat out(1, 1);
        out(0, 0) = d.squaredNorm() / S(d.size());
        const S inv_n = S(2) / S(d.size());
        return make(std::move(out), {a, b}, [a, b, inv_n](TapeT& t, const Mat& g, int) {
            const Mat d2 = t.value(a) - t.value(b);
            if (t.wants(a)) t.grad_ref(a) += g(0, 0) * inv_n * d2;
            if (t.wants(b)) t.grad_ref(b) -= g(0, 0) * inv_n * d2;
        });
    }

    // Per-row dot product -> n x 1 column.
    Var rowwise_dot(Var a, Var b) {
        require(same_shape(a, b), ErrKind::dimension, "rowwise_dot shape mismatch");
        Mat out = value(a).cwiseProduct(value(b)).rowwise().sum();
        return make(std::move(out), {a, b}, [a, b](TapeT& t, const Mat& g, int) {
            if (t.wants(a))
                t.grad_ref(a) += t.value(b).array().colwise() * g.col(0).array();
            if (t.wants(b))
                t.grad_ref(b) += t.value(a).array().colwise() * g.col(0).array();
        });
    }

    // x W + broadcast bias (bias may be invalid for none).
    Var linear(Var x, Var w, Var bias) {
        Var y = matmul(x, w);
        return bias.valid() ? add_row(y, bias) : y;
    }

    // ---- backward ----

    void backward(Var root) {
        const Mat& rv = value(root);
        require(rv.rows() == 1 && rv.cols() == 1, ErrKind::validation,
                "backward root must be scalar (1x1)");
        require(grad_enabled_, ErrKind::validation, "backward on a no-grad tape");
        grad_ref(root)(0, 0) = S(1);
        for (int i = root.i; i >= 0; --i) {
            Node& n = nodes_[static_cast<std::size_t>(i)];
            if (n.back && n.grad.size() > 0) n.back(*this, n.grad, i);
            if (release_memory_ && !n.is_leaf) {
                n.val.resize(0, 0);
                n.grad.resize(0, 0);
            }
        }
    }

    Mat& grad_ref(Var v) {
        Node& n = nodes_[static_cast<std::size_t>(v.i)];
        if (n.grad.size() == 0) {
            const Mat& val = n.ext ? *n.ext : n.val;
            n.grad = Mat::Zero(val.rows(), val.cols());
        }
        return n.grad;
    }

    bool wants(Var v) const { return nodes_[static_cast<std::size_t>(v.i)].needs_grad; }

private:
    struct Node {
        Mat val;
        const Mat* ext = nullptr;
        Mat grad;
        std::function<void(TapeT&, const Mat&, int)> back;
        bool needs_grad = false;
        bool is_leaf = false;
    };

    bool same_shape(Var a, Var b) const {
        return value(a).rows() == value(b).rows() && value(a).cols() == value(b).cols();
    }

    template <class ValueLike, class F>
    Var make(ValueLike&& val, const std::vector<Var>& parents, F&& back) {
        bool needs = false;
        if (grad_enabled_)
            for (Var p : parents) needs = needs || nodes_[static_cast<std::size_t>(p.i)].needs_grad;
        Node n;
        n.val = std::forward<ValueLike>(val);
        n.needs_grad = needs;
        if (needs) n.back = std::forward<F>(back);
        nodes_.push_back(std::move(n));
        return Var{size() - 1};
    }

    std::vector<Node> nodes_;
    bool grad_enabled_ = true;
    bool release_memory_ = false;
};

using Tape = TapeT<double>;

// Named trainable tensors with gradient slots, in fixed creation order.
template <class S>
class ParamStoreT {
public:
    struct Entry {
        std::string name;
        MatT<S> value;
        MatT<S> grad;
    };

    int add(const std::string& name, Eigen::Index rows, Eigen::Index cols) {
        require(!index_.count(name), ErrKind::config, "duplicate parameter name: " + name);
        entries_.push_back(Entry{name, MatT<S>::Zero(rows, cols), MatT<S>::Zero(rows, cols)});
        index_[name] = static_cast<int>(entries_.size()) - 1;
        return static_cast<int>(entries_.size()) - 1;
    }

    int find(const std::string& name) const {
        auto it = index_.find(name);
        require(it != index_.end(), ErrKind::config, "unknown parameter: " + name);
        return it->second;
    }

    bool contains(const std::string& name) const { return index_.count(name) > 0; }

    Entry& entry(int i) { return entries_[static_cast<std::size_t>(i)]; }
    const Entry& entry(int i) const { return entries_[static_cast<std::size_t>(i)]; }
    MatT<S>& value(int i) { return entries_[static_cast<std::size_t>(i)].value; }
    const MatT<S>& value(int i) const { return entries_[static_cast<std::size_t>(i)].value; }
    MatT<S>& grad(int i) { return entries_[static_cast<std::size_t>(i)].grad; }

    int count() const { return static_cast<int>(entries_.size()); }

    std::int64_t total_params() const {
        std::int64_t n = 0;
        for (const auto& e : entries_) n += static_cast<std::int64_t>(e.value.size());
        return n;
    }

    void zero_grad() {
        for (auto& e : entries_) e.grad.setZero();
    }

private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace moda::ad
