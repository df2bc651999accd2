// Copyright 2026 The NAP Trajectory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nap/numeric/ops.hpp"

#include "nap/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace nap::numeric::ops
{
namespace
{
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;
using MutMap = Eigen::Map<RowMatrix>;

ConstMap as_matrix(const Tensor & t)
{
  return ConstMap(t.data().data(), static_cast<Eigen::Index>(t.dim(0)), static_cast<Eigen::Index>(t.dim(1)));
}

MutMap as_matrix(Tensor & t)
{
  return MutMap(t.data().data(), static_cast<Eigen::Index>(t.dim(0)), static_cast<Eigen::Index>(t.dim(1)));
}

void require_rank(const Tensor & t, std::size_t rank, const char * op)
{
  if (t.rank() != rank) {
    throw ShapeError(std::string(op) + ": expected rank " + std::to_string(rank) + ", got " +
                     shape_string(t.shape()));
  }
}

void require_same(const Tensor & a, const Tensor & b, const char * op)
{
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": " + shape_string(a.shape()) + " vs " + shape_string(b.shape()));
  }
}

Graph & graph_of(Var v)
{
  if (v.graph == nullptr) {
    throw ShapeError("operation on an unbound Var");
  }
  return *v.graph;
}

void accumulate(Graph & g, Var v, const Tensor & delta)
{
  if (!g.needs_grad(v)) {
    return;
  }
  Tensor & slot = g.grad_slot(v);
  for (std::size_t i = 0; i < slot.size(); ++i) {
    slot[i] += delta[i];
  }
}

// Elementwise unary op whose derivative is expressed via input and output.
template <typename Forward, typename Derivative>
Var unary(const char * name, Var x, Forward forward, Derivative derivative)
{
  Graph & g = graph_of(x);
  const Tensor & in = x.value();
  Tensor out(in.shape());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = forward(in[i]);
  }
  return g.record(name, std::move(out), {x},
    [derivative](Graph & gr, std::span<const Var> inputs, const Tensor & y, const Tensor & dy) {
      if (!gr.needs_grad(inputs[0])) {
        return;
      }
      const Tensor & xin = inputs[0].value();
      Tensor & dx = gr.grad_slot(inputs[0]);
      for (std::size_t i = 0; i < dx.size(); ++i) {
        dx[i] += dy[i] * derivative(xin[i], y[i]);
      }
    });
}
}  // namespace

Var matmul_t(Var x, Var w)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  const Tensor & wv = w.value();
  require_rank(xv, 2, "matmul_t");
  require_rank(wv, 2, "matmul_t");
  if (xv.dim(1) != wv.dim(1)) {
    throw ShapeError("matmul_t: input " + shape_string(xv.shape()) + " does not conform to weight " +
                     shape_string(wv.shape()));
  }
  Tensor out({xv.dim(0), wv.dim(0)});
  as_matrix(out).noalias() = as_matrix(xv) * as_matrix(wv).transpose();
  return g.record("matmul_t", std::move(out), {x, w},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (gr.needs_grad(in[0])) {
        as_matrix(gr.grad_slot(in[0])).noalias() += as_matrix(dy) * as_matrix(in[1].value());
      }
      if (gr.needs_grad(in[1])) {
        as_matrix(gr.grad_slot(in[1])).noalias() += as_matrix(dy).transpose() * as_matrix(in[0].value());
      }
    });
}

Var add_bias(Var x, Var b)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  const Tensor & bv = b.value();
  require_rank(xv, 2, "add_bias");
  if (bv.size() != xv.dim(1)) {
    throw ShapeError("add_bias: bias " + shape_string(bv.shape()) + " vs input " + shape_string(xv.shape()));
  }
  Tensor out = xv;
  const std::size_t rows = xv.dim(0);
  const std::size_t cols = xv.dim(1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out[r * cols + c] += bv[c];
    }
  }
  return g.record("add_bias", std::move(out), {x, b},
    [rows, cols](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      accumulate(gr, in[0], dy);
      if (gr.needs_grad(in[1])) {
        Tensor & db = gr.grad_slot(in[1]);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) {
            db[c] += dy[r * cols + c];
          }
        }
      }
    });
}

Var add(Var a, Var b)
{
  Graph & g = graph_of(a);
  require_same(a.value(), b.value(), "add");
  Tensor out = a.value();
  const Tensor & bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += bv[i];
  }
  return g.record("add", std::move(out), {a, b},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      accumulate(gr, in[0], dy);
      accumulate(gr, in[1], dy);
    });
}

Var sub(Var a, Var b)
{
  Graph & g = graph_of(a);
  require_same(a.value(), b.value(), "sub");
  Tensor out = a.value();
  const Tensor & bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= bv[i];
  }
  return g.record("sub", std::move(out), {a, b},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      accumulate(gr, in[0], dy);
      if (gr.needs_grad(in[1])) {
        Tensor & db = gr.grad_slot(in[1]);
        for (std::size_t i = 0; i < db.size(); ++i) {
          db[i] -= dy[i];
        }
      }
    });
}

Var mul(Var a, Var b)
{
  Graph & g = graph_of(a);
  require_same(a.value(), b.value(), "mul");
  Tensor out = a.value();
  const Tensor & bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= bv[i];
  }
  return g.record("mul", std::move(out), {a, b},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      const Tensor & av = in[0].value();
      const Tensor & bw = in[1].value();
      if (gr.needs_grad(in[0])) {
        Tensor & da = gr.grad_slot(in[0]);
        for (std::size_t i = 0; i < da.size(); ++i) {
          da[i] += dy[i] * bw[i];
        }
      }
      if (gr.needs_grad(in[1])) {
        Tensor & db = gr.grad_slot(in[1]);
        for (std::size_t i = 0; i < db.size(); ++i) {
          db[i] += dy[i] * av[i];
        }
      }
    });
}

Var scale(Var x, double factor)
{
  return unary("scale", x, [factor](double v) { return v * factor; },
               [factor](double, double) { return factor; });
}

Var square(Var x)
{
  return unary("square", x, [](double v) { return v * v; }, [](double v, double) { return 2.0 * v; });
}

Var sigmoid(Var x)
{
  return unary("sigmoid", x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
               [](double, double y) { return y * (1.0 - y); });
}

Var tanh(Var x)
{
  return unary("tanh", x, [](double v) { return std::tanh(v); }, [](double, double y) { return 1.0 - y * y; });
}

Var relu(Var x)
{
  return unary("relu", x, [](double v) { return v > 0.0 ? v : 0.0; },
               [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Var exp(Var x)
{
  return unary("exp", x, [](double v) { return std::exp(v); }, [](double, double y) { return y; });
}

Var concat_cols(std::span<const Var> parts)
{
  if (parts.empty()) {
    throw ShapeError("concat_cols: no inputs");
  }
  Graph & g = graph_of(parts[0]);
  const std::size_t rows = parts[0].value().dim(0);
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Var & p : parts) {
    require_rank(p.value(), 2, "concat_cols");
    if (p.value().dim(0) != rows) {
      throw ShapeError("concat_cols: row count mismatch");
    }
    widths.push_back(p.value().dim(1));
    total += widths.back();
  }
  Tensor out({rows, total});
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor & v = parts[k].value();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(v.data().data() + r * widths[k], widths[k], out.data().data() + r * total + offset);
    }
    offset += widths[k];
  }
  return g.record("concat_cols", std::move(out), std::vector<Var>(parts.begin(), parts.end()),
    [rows, total, widths](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      std::size_t off = 0;
      for (std::size_t k = 0; k < in.size(); ++k) {
        if (gr.needs_grad(in[k])) {
          Tensor & dx = gr.grad_slot(in[k]);
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < widths[k]; ++c) {
              dx[r * widths[k] + c] += dy[r * total + off + c];
            }
          }
        }
        off += widths[k];
      }
    });
}

Var slice_cols(Var x, std::size_t start, std::size_t count)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  require_rank(xv, 2, "slice_cols");
  const std::size_t rows = xv.dim(0);
  const std::size_t cols = xv.dim(1);
  if (count == 0 || start + count > cols) {
    throw ShapeError("slice_cols: range out of bounds for " + shape_string(xv.shape()));
  }
  Tensor out({rows, count});
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(xv.data().data() + r * cols + start, count, out.data().data() + r * count);
  }
  return g.record("slice_cols", std::move(out), {x},
    [rows, cols, start, count](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (!gr.needs_grad(in[0])) {
        return;
      }
      Tensor & dx = gr.grad_slot(in[0]);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < count; ++c) {
          dx[r * cols + start + c] += dy[r * count + c];
        }
      }
    });
}

Var mean_rows(Var x)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  require_rank(xv, 2, "mean_rows");
  const std::size_t rows = xv.dim(0);
  const std::size_t cols = xv.dim(1);
  Tensor out({1, cols});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out[c] += xv[r * cols + c];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows);
  for (auto & v : out.data()) {
    v *= inv;
  }
  return g.record("mean_rows", std::move(out), {x},
    [rows, cols, inv](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (!gr.needs_grad(in[0])) {
        return;
      }
      Tensor & dx = gr.grad_slot(in[0]);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          dx[r * cols + c] += dy[c] * inv;
        }
      }
    });
}

Var sum_cols(Var x)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  require_rank(xv, 2, "sum_cols");
  const std::size_t rows = xv.dim(0);
  const std::size_t cols = xv.dim(1);
  Tensor out({rows, 1});
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      s += xv[r * cols + c];
    }
    out[r] = s;
  }
  return g.record("sum_cols", std::move(out), {x},
    [rows, cols](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (!gr.needs_grad(in[0])) {
        return;
      }
      Tensor & dx = gr.grad_slot(in[0]);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          dx[r * cols + c] += dy[r];
        }
      }
    });
}

Var sum_all(Var x)
{
  Graph & g = graph_of(x);
  double s = 0.0;
  for (double v : x.value().data()) {
    s += v;
  }
  return g.record("sum_all", Tensor({1}, {s}), {x},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (!gr.needs_grad(in[0])) {
        return;
      }
      for (double & d : gr.grad_slot(in[0]).data()) {
        d += dy[0];
      }
    });
}

Var min_across(std::span<const Var> candidates)
{
  if (candidates.empty()) {
    throw ShapeError("min_across: no candidates");
  }
  Graph & g = graph_of(candidates[0]);
  const Tensor & first = candidates[0].value();
  for (const Var & c : candidates) {
    require_same(first, c.value(), "min_across");
  }
  Tensor out = first;
  std::vector<std::size_t> argmin(first.size(), 0);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const Tensor & v = candidates[k].value();
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (v[i] < out[i]) {
        out[i] = v[i];
        argmin[i] = k;
      }
    }
  }
  return g.record("min_across", std::move(out), std::vector<Var>(candidates.begin(), candidates.end()),
    [argmin = std::move(argmin)](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      for (std::size_t i = 0; i < argmin.size(); ++i) {
        const Var & winner = in[argmin[i]];
        if (gr.needs_grad(winner)) {
          gr.grad_slot(winner)[i] += dy[i];
        }
      }
    });
}

Var conv2d(Var x, Var w, Var b, std::size_t stride, std::size_t padding)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  const Tensor & wv = w.value();
  const Tensor & bv = b.value();
  require_rank(xv, 4, "conv2d");
  require_rank(wv, 4, "conv2d");
  const std::size_t batch = xv.dim(0), in_c = xv.dim(1), in_h = xv.dim(2), in_w = xv.dim(3);
  const std::size_t out_c = wv.dim(0), k = wv.dim(2);
  if (wv.dim(1) != in_c || wv.dim(3) != k || bv.size() != out_c || stride == 0) {
    throw ShapeError("conv2d: weight " + shape_string(wv.shape()) + " / bias " + shape_string(bv.shape()) +
                     " do not conform to input " + shape_string(xv.shape()));
  }
  if (in_h + 2 * padding < k || in_w + 2 * padding < k) {
    throw ShapeError("conv2d: kernel larger than padded input");
  }
  const std::size_t out_h = (in_h + 2 * padding - k) / stride + 1;
  const std::size_t out_w = (in_w + 2 * padding - k) / stride + 1;

  struct Geometry
  {
    std::size_t batch, in_c, in_h, in_w, out_c, k, out_h, out_w, stride, padding;
  };
  const Geometry geo{batch, in_c, in_h, in_w, out_c, k, out_h, out_w, stride, padding};

  // Visits every (output cell, input tap) pair inside the padded input.
  auto for_each_tap = [geo](auto && body) {
    for (std::size_t n = 0; n < geo.batch; ++n) {
      for (std::size_t o = 0; o < geo.out_c; ++o) {
        for (std::size_t oy = 0; oy < geo.out_h; ++oy) {
          for (std::size_t ox = 0; ox < geo.out_w; ++ox) {
            const std::size_t out_idx = ((n * geo.out_c + o) * geo.out_h + oy) * geo.out_w + ox;
            for (std::size_t c = 0; c < geo.in_c; ++c) {
              for (std::size_t ky = 0; ky < geo.k; ++ky) {
                const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(oy * geo.stride + ky) -
                                          static_cast<std::ptrdiff_t>(geo.padding);
                if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(geo.in_h)) {
                  continue;
                }
                for (std::size_t kx = 0; kx < geo.k; ++kx) {
                  const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(ox * geo.stride + kx) -
                                            static_cast<std::ptrdiff_t>(geo.padding);
                  if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(geo.in_w)) {
                    continue;
                  }
                  const std::size_t in_idx =
                    ((n * geo.in_c + c) * geo.in_h + static_cast<std::size_t>(iy)) * geo.in_w +
                    static_cast<std::size_t>(ix);
                  const std::size_t w_idx = ((o * geo.in_c + c) * geo.k + ky) * geo.k + kx;
                  body(out_idx, in_idx, w_idx);
                }
              }
            }
          }
        }
      }
    }
  };

  Tensor out({batch, out_c, out_h, out_w});
  for (std::size_t n = 0; n < batch; ++n) {
    for (std::size_t o = 0; o < out_c; ++o) {
      double * plane = out.data().data() + (n * out_c + o) * out_h * out_w;
      std::fill(plane, plane + out_h * out_w, bv[o]);
    }
  }
  for_each_tap([&](std::size_t oi, std::size_t ii, std::size_t wi) { out[oi] += xv[ii] * wv[wi]; });

  return g.record("conv2d", std::move(out), {x, w, b},
    [geo, for_each_tap](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      const Tensor & xin = in[0].value();
      const Tensor & win = in[1].value();
      if (gr.needs_grad(in[0])) {
        Tensor & dx = gr.grad_slot(in[0]);
        for_each_tap([&](std::size_t oi, std::size_t ii, std::size_t wi) { dx[ii] += dy[oi] * win[wi]; });
      }
      if (gr.needs_grad(in[1])) {
        Tensor & dw = gr.grad_slot(in[1]);
        for_each_tap([&](std::size_t oi, std::size_t ii, std::size_t wi) { dw[wi] += dy[oi] * xin[ii]; });
      }
      if (gr.needs_grad(in[2])) {
        Tensor & db = gr.grad_slot(in[2]);
        const std::size_t plane = geo.out_h * geo.out_w;
        for (std::size_t n = 0; n < geo.batch; ++n) {
          for (std::size_t o = 0; o < geo.out_c; ++o) {
            const double * d = dy.data().data() + (n * geo.out_c + o) * plane;
            for (std::size_t i = 0; i < plane; ++i) {
              db[o] += d[i];
            }
          }
        }
      }
    });
}

Var global_avg_pool(Var x)
{
  Graph & g = graph_of(x);
  const Tensor & xv = x.value();
  require_rank(xv, 4, "global_avg_pool");
  const std::size_t batch = xv.dim(0), channels = xv.dim(1);
  const std::size_t plane = xv.dim(2) * xv.dim(3);
  const double inv = 1.0 / static_cast<double>(plane);
  Tensor out({batch, channels});
  for (std::size_t i = 0; i < batch * channels; ++i) {
    double s = 0.0;
    for (std::size_t p = 0; p < plane; ++p) {
      s += xv[i * plane + p];
    }
    out[i] = s * inv;
  }
  return g.record("global_avg_pool", std::move(out), {x},
    [batch, channels, plane, inv](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      if (!gr.needs_grad(in[0])) {
        return;
      }
      Tensor & dx = gr.grad_slot(in[0]);
      for (std::size_t i = 0; i < batch * channels; ++i) {
        for (std::size_t p = 0; p < plane; ++p) {
          dx[i * plane + p] += dy[i] * inv;
        }
      }
    });
}

Var reshape(Var x, Shape shape)
{
  Graph & g = graph_of(x);
  if (shape_size(shape) != x.value().size()) {
    throw ShapeError("reshape: " + shape_string(x.value().shape()) + " -> " + shape_string(shape));
  }
  return g.record("reshape", x.value().reshaped(std::move(shape)), {x},
    [](Graph & gr, std::span<const Var> in, const Tensor &, const Tensor & dy) {
      accumulate(gr, in[0], dy);
    });
}

}  // namespace nap::numeric::ops
