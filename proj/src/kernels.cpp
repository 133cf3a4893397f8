#include "misinfo/kernels.hpp"

#include <cmath>
#include <cstddef>

#include "misinfo/errors.hpp"

namespace misinfo::kernels {

namespace {

void check_linear_shapes(const Matrix& X, const Matrix& W,
                         const std::vector<double>& bias, const Matrix& Y) {
  if (X.cols != W.cols || bias.size() != W.rows || Y.rows != X.rows ||
      Y.cols != W.rows) {
    throw Error("linear kernel: shape mismatch");
  }
}

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.same_shape(b)) throw Error(std::string(what) + ": shape mismatch");
}

inline double bce_from_score(double s, double y) {
  return -(y * std::log(s) + (1.0 - y) * std::log(1.0 - s));
}

// max(z,0) - z*y + log(1 + exp(-|z|)); equals bce(sigmoid(z), y).
inline double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::fabs(z)));
}

inline double sigmoid_scalar(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

// ---------------------------------------------------------------------------
// OpenMP kernels. Reductions run per output cell (or per row with a serial
// combine), which keeps results bit-identical for any thread count.
// ---------------------------------------------------------------------------

void linear_forward(const Matrix& X, const Matrix& W,
                    const std::vector<double>& bias, Matrix& Y) {
  check_linear_shapes(X, W, bias, Y);
  const std::int64_t n = static_cast<std::int64_t>(X.rows);
  const std::size_t in = X.cols, out = W.rows;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double* x = X.row(static_cast<std::size_t>(i));
    double* y = Y.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < out; ++k) {
      const double* w = W.row(k);
      double acc = 0.0;
      for (std::size_t j = 0; j < in; ++j) acc += x[j] * w[j];
      y[k] = acc + bias[k];
    }
  }
}

void linear_backward(const Matrix& X, const Matrix& W, const Matrix& dY,
                     Matrix& dX, Matrix& dW, std::vector<double>& dbias) {
  check_linear_shapes(X, W, dbias, dY);
  check_same_shape(X, dX, "linear_backward dX");
  check_same_shape(W, dW, "linear_backward dW");
  const std::size_t n = X.rows, in = X.cols, out = W.rows;

  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    const double* dy = dY.row(static_cast<std::size_t>(i));
    double* dx = dX.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < in; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < out; ++k) acc += dy[k] * W.at(k, j);
      dx[j] = acc;
    }
  }

  const std::int64_t outw = static_cast<std::int64_t>(out);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < outw; ++k) {
    double* dwk = dW.row(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < in; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += dY.at(i, k) * X.at(i, j);
      dwk[j] = acc;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += dY.at(i, k);
    dbias[static_cast<std::size_t>(k)] = acc;
  }
}

void tanh_forward(const Matrix& Z, Matrix& Y) {
  check_same_shape(Z, Y, "tanh_forward");
  const std::int64_t total = static_cast<std::int64_t>(Z.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i)
    Y.data[static_cast<std::size_t>(i)] =
        std::tanh(Z.data[static_cast<std::size_t>(i)]);
}

void tanh_backward(const Matrix& Y, const Matrix& dY, Matrix& dZ) {
  check_same_shape(Y, dY, "tanh_backward");
  check_same_shape(Y, dZ, "tanh_backward");
  const std::int64_t total = static_cast<std::int64_t>(Y.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(i);
    dZ.data[u] = dY.data[u] * (1.0 - Y.data[u] * Y.data[u]);
  }
}

void sigmoid(const Matrix& Z, Matrix& S) {
  check_same_shape(Z, S, "sigmoid");
  const std::int64_t total = static_cast<std::int64_t>(Z.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(i);
    S.data[u] = sigmoid_scalar(Z.data[u]);
  }
}

double masked_bce_from_scores(const Matrix& scores, const Matrix& target,
                              const Matrix& mask) {
  check_same_shape(scores, target, "masked_bce");
  check_same_shape(scores, mask, "masked_bce");
  const std::size_t n = scores.rows, q = scores.cols;
  std::vector<double> row_loss(n, 0.0);
  std::vector<std::size_t> row_count(n, 0);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    const auto u = static_cast<std::size_t>(i);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t j = 0; j < q; ++j) {
      if (mask.at(u, j) == 0.0) continue;
      acc += bce_from_score(scores.at(u, j), target.at(u, j));
      ++cnt;
    }
    row_loss[u] = acc;
    row_count[u] = cnt;
  }
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += row_loss[i];
    count += row_count[i];
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

double masked_bce_with_logits(const Matrix& logits, const Matrix& target,
                              const Matrix& mask, Matrix* dlogits) {
  check_same_shape(logits, target, "masked_bce_with_logits");
  check_same_shape(logits, mask, "masked_bce_with_logits");
  if (dlogits != nullptr)
    check_same_shape(logits, *dlogits, "masked_bce_with_logits dlogits");
  const std::size_t n = logits.rows, q = logits.cols;

  std::size_t count = 0;
  for (std::size_t i = 0; i < n * q; ++i)
    if (mask.data[i] != 0.0) ++count;

  std::vector<double> row_loss(n, 0.0);
  const double inv_count =
      count == 0 ? 0.0 : 1.0 / static_cast<double>(count);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    const auto u = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      if (mask.at(u, j) == 0.0) {
        if (dlogits != nullptr) dlogits->at(u, j) = 0.0;
        continue;
      }
      const double z = logits.at(u, j), y = target.at(u, j);
      acc += bce_from_logit(z, y);
      if (dlogits != nullptr)
        dlogits->at(u, j) = (sigmoid_scalar(z) - y) * inv_count;
    }
    row_loss[u] = acc;
  }
  if (count == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += row_loss[i];
  return total * inv_count;
}

void adamw_update(std::vector<double>& theta, const std::vector<double>& grad,
                  std::vector<double>& m, std::vector<double>& v, long step,
                  const AdamwConfig& cfg, bool apply_decay) {
  if (theta.size() != grad.size() || theta.size() != m.size() ||
      theta.size() != v.size()) {
    throw Error("adamw_update: size mismatch");
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  const double decay = apply_decay ? cfg.weight_decay : 0.0;
  const std::int64_t total = static_cast<std::int64_t>(theta.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double g = grad[u];
    m[u] = cfg.beta1 * m[u] + (1.0 - cfg.beta1) * g;
    v[u] = cfg.beta2 * v[u] + (1.0 - cfg.beta2) * g * g;
    const double mhat = m[u] / bc1;
    const double vhat = v[u] / bc2;
    theta[u] -= cfg.lr * (mhat / (std::sqrt(vhat) + cfg.eps) + decay * theta[u]);
  }
}

void embedding_mean_forward(const Matrix& table, const TokenRows& token_rows,
                            Matrix& pooled) {
  if (pooled.rows != token_rows.size() || pooled.cols != table.cols)
    throw Error("embedding_mean_forward: shape mismatch");
  const std::size_t dim = table.cols;
  const std::int64_t n = static_cast<std::int64_t>(token_rows.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    double* out = pooled.row(u);
    const auto& rows = token_rows[u];
    for (std::size_t j = 0; j < dim; ++j) out[j] = 0.0;
    if (rows.empty()) continue;
    for (const std::uint32_t r : rows) {
      const double* e = table.row(r);
      for (std::size_t j = 0; j < dim; ++j) out[j] += e[j];
    }
    const double inv = 1.0 / static_cast<double>(rows.size());
    for (std::size_t j = 0; j < dim; ++j) out[j] *= inv;
  }
}

void embedding_mean_backward(const TokenRows& token_rows, const Matrix& dpooled,
                             Matrix& dtable) {
  if (dpooled.rows != token_rows.size() || dpooled.cols != dtable.cols)
    throw Error("embedding_mean_backward: shape mismatch");
  dtable.fill(0.0);
  const std::size_t n = token_rows.size();
  const std::int64_t dim = static_cast<std::int64_t>(dtable.cols);
  // Each thread owns a column slice, so accumulation into repeated rows is
  // race-free and runs in example order.
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < dim; ++j) {
    const auto col = static_cast<std::size_t>(j);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& rows = token_rows[i];
      if (rows.empty()) continue;
      const double contrib =
          dpooled.at(i, col) / static_cast<double>(rows.size());
      for (const std::uint32_t r : rows) dtable.at(r, col) += contrib;
    }
  }
}

void dropout_apply(const Matrix& mask, double keep_prob, Matrix& X) {
  check_same_shape(mask, X, "dropout_apply");
  const double inv_keep = 1.0 / keep_prob;
  const std::int64_t total = static_cast<std::int64_t>(X.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(i);
    X.data[u] *= mask.data[u] * inv_keep;
  }
}

// ---------------------------------------------------------------------------
// Serial reference twins: plain loops, same accumulation order.
// ---------------------------------------------------------------------------

namespace serial {

void linear_forward(const Matrix& X, const Matrix& W,
                    const std::vector<double>& bias, Matrix& Y) {
  check_linear_shapes(X, W, bias, Y);
  for (std::size_t i = 0; i < X.rows; ++i) {
    const double* x = X.row(i);
    double* y = Y.row(i);
    for (std::size_t k = 0; k < W.rows; ++k) {
      const double* w = W.row(k);
      double acc = 0.0;
      for (std::size_t j = 0; j < X.cols; ++j) acc += x[j] * w[j];
      y[k] = acc + bias[k];
    }
  }
}

void linear_backward(const Matrix& X, const Matrix& W, const Matrix& dY,
                     Matrix& dX, Matrix& dW, std::vector<double>& dbias) {
  check_linear_shapes(X, W, dbias, dY);
  check_same_shape(X, dX, "linear_backward dX");
  check_same_shape(W, dW, "linear_backward dW");
  for (std::size_t i = 0; i < X.rows; ++i) {
    const double* dy = dY.row(i);
    double* dx = dX.row(i);
    for (std::size_t j = 0; j < X.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < W.rows; ++k) acc += dy[k] * W.at(k, j);
      dx[j] = acc;
    }
  }
  for (std::size_t k = 0; k < W.rows; ++k) {
    for (std::size_t j = 0; j < W.cols; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < X.rows; ++i) acc += dY.at(i, k) * X.at(i, j);
      dW.at(k, j) = acc;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) acc += dY.at(i, k);
    dbias[k] = acc;
  }
}

void tanh_forward(const Matrix& Z, Matrix& Y) {
  check_same_shape(Z, Y, "tanh_forward");
  for (std::size_t i = 0; i < Z.size(); ++i) Y.data[i] = std::tanh(Z.data[i]);
}

void tanh_backward(const Matrix& Y, const Matrix& dY, Matrix& dZ) {
  check_same_shape(Y, dY, "tanh_backward");
  check_same_shape(Y, dZ, "tanh_backward");
  for (std::size_t i = 0; i < Y.size(); ++i)
    dZ.data[i] = dY.data[i] * (1.0 - Y.data[i] * Y.data[i]);
}

void sigmoid(const Matrix& Z, Matrix& S) {
  check_same_shape(Z, S, "sigmoid");
  for (std::size_t i = 0; i < Z.size(); ++i)
    S.data[i] = sigmoid_scalar(Z.data[i]);
}

double masked_bce_from_scores(const Matrix& scores, const Matrix& target,
                              const Matrix& mask) {
  check_same_shape(scores, target, "masked_bce");
  check_same_shape(scores, mask, "masked_bce");
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < scores.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < scores.cols; ++j) {
      if (mask.at(i, j) == 0.0) continue;
      acc += bce_from_score(scores.at(i, j), target.at(i, j));
      ++count;
    }
    total += acc;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

double masked_bce_with_logits(const Matrix& logits, const Matrix& target,
                              const Matrix& mask, Matrix* dlogits) {
  check_same_shape(logits, target, "masked_bce_with_logits");
  check_same_shape(logits, mask, "masked_bce_with_logits");
  if (dlogits != nullptr)
    check_same_shape(logits, *dlogits, "masked_bce_with_logits dlogits");

  std::size_t count = 0;
  for (std::size_t i = 0; i < logits.size(); ++i)
    if (mask.data[i] != 0.0) ++count;
  const double inv_count =
      count == 0 ? 0.0 : 1.0 / static_cast<double>(count);

  double total = 0.0;
  for (std::size_t i = 0; i < logits.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < logits.cols; ++j) {
      if (mask.at(i, j) == 0.0) {
        if (dlogits != nullptr) dlogits->at(i, j) = 0.0;
        continue;
      }
      const double z = logits.at(i, j), y = target.at(i, j);
      acc += bce_from_logit(z, y);
      if (dlogits != nullptr)
        dlogits->at(i, j) = (sigmoid_scalar(z) - y) * inv_count;
    }
    total += acc;
  }
  return count == 0 ? 0.0 : total * inv_count;
}

void adamw_update(std::vector<double>& theta, const std::vector<double>& grad,
                  std::vector<double>& m, std::vector<double>& v, long step,
                  const AdamwConfig& cfg, bool apply_decay) {
  if (theta.size() != grad.size() || theta.size() != m.size() ||
      theta.size() != v.size()) {
    throw Error("adamw_update: size mismatch");
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  const double decay = apply_decay ? cfg.weight_decay : 0.0;
  for (std::size_t u = 0; u < theta.size(); ++u) {
    const double g = grad[u];
    m[u] = cfg.beta1 * m[u] + (1.0 - cfg.beta1) * g;
    v[u] = cfg.beta2 * v[u] + (1.0 - cfg.beta2) * g * g;
    const double mhat = m[u] / bc1;
    const double vhat = v[u] / bc2;
    theta[u] -= cfg.lr * (mhat / (std::sqrt(vhat) + cfg.eps) + decay * theta[u]);
  }
}

void embedding_mean_forward(const Matrix& table, const TokenRows& token_rows,
                            Matrix& pooled) {
  if (pooled.rows != token_rows.size() || pooled.cols != table.cols)
    throw Error("embedding_mean_forward: shape mismatch");
  for (std::size_t i = 0; i < token_rows.size(); ++i) {
    double* out = pooled.row(i);
    const auto& rows = token_rows[i];
    for (std::size_t j = 0; j < table.cols; ++j) out[j] = 0.0;
    if (rows.empty()) continue;
    for (const std::uint32_t r : rows) {
      const double* e = table.row(r);
      for (std::size_t j = 0; j < table.cols; ++j) out[j] += e[j];
    }
    const double inv = 1.0 / static_cast<double>(rows.size());
    for (std::size_t j = 0; j < table.cols; ++j) out[j] *= inv;
  }
}

void embedding_mean_backward(const TokenRows& token_rows, const Matrix& dpooled,
                             Matrix& dtable) {
  if (dpooled.rows != token_rows.size() || dpooled.cols != dtable.cols)
    throw Error("embedding_mean_backward: shape mismatch");
  dtable.fill(0.0);
  for (std::size_t col = 0; col < dtable.cols; ++col) {
    for (std::size_t i = 0; i < token_rows.size(); ++i) {
      const auto& rows = token_rows[i];
      if (rows.empty()) continue;
      const double contrib =
          dpooled.at(i, col) / static_cast<double>(rows.size());
      for (const std::uint32_t r : rows) dtable.at(r, col) += contrib;
    }
  }
}

void dropout_apply(const Matrix& mask, double keep_prob, Matrix& X) {
  check_same_shape(mask, X, "dropout_apply");
  const double inv_keep = 1.0 / keep_prob;
  for (std::size_t i = 0; i < X.size(); ++i)
    X.data[i] *= mask.data[i] * inv_keep;
}

}  // namespace serial

}  // namespace misinfo::kernels
