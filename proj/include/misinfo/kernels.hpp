#pragma once

#include <cstdint>
#include <vector>

#include "misinfo/matrix.hpp"

// Numeric kernels behind training and inference. Each kernel exists twice:
// the OpenMP version in misinfo::kernels and a plain-loop reference in
// misinfo::kernels::serial. Both accumulate in the same order, so their
// outputs are bit-identical and independent of the thread count; the unit
// tests assert exact equality and bench/ compares their throughput.
namespace misinfo::kernels {

using TokenRows = std::vector<std::vector<std::uint32_t>>;

struct AdamwConfig {
  double lr = 3e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Y = X * W^T + bias. X: n x in, W: out x in, bias: out, Y: n x out.
void linear_forward(const Matrix& X, const Matrix& W,
                    const std::vector<double>& bias, Matrix& Y);

// dX = dY * W, dW[k][j] = sum_i dY[i][k] * X[i][j], dbias[k] = sum_i dY[i][k].
void linear_backward(const Matrix& X, const Matrix& W, const Matrix& dY,
                     Matrix& dX, Matrix& dW, std::vector<double>& dbias);

void tanh_forward(const Matrix& Z, Matrix& Y);

// dZ = dY * (1 - Y^2) where Y = tanh(Z).
void tanh_backward(const Matrix& Y, const Matrix& dY, Matrix& dZ);

void sigmoid(const Matrix& Z, Matrix& S);

// Mean binary cross-entropy over cells with mask != 0; 0 if no cell counts.
// Scores must lie strictly inside (0, 1).
double masked_bce_from_scores(const Matrix& scores, const Matrix& target,
                              const Matrix& mask);

// Same loss computed from logits (numerically stable); when dlogits is given
// it receives d(loss)/d(logits): (sigmoid(z) - y) / M on counted cells, 0
// elsewhere, M = counted-cell total.
double masked_bce_with_logits(const Matrix& logits, const Matrix& target,
                              const Matrix& mask, Matrix* dlogits);

// Decoupled-weight-decay Adam step; step starts at 1. Decay is skipped when
// apply_decay is false (bias vectors and gains).
void adamw_update(std::vector<double>& theta, const std::vector<double>& grad,
                  std::vector<double>& m, std::vector<double>& v, long step,
                  const AdamwConfig& cfg, bool apply_decay);

// pooled[i] = mean of table rows listed in token_rows[i]; zeros when empty.
void embedding_mean_forward(const Matrix& table, const TokenRows& token_rows,
                            Matrix& pooled);

// Scatter-accumulate of dpooled back into dtable (zeroed here first).
// Parallel over embedding dimensions so repeated rows never race.
void embedding_mean_backward(const TokenRows& token_rows, const Matrix& dpooled,
                             Matrix& dtable);

// X[i][j] *= mask[i][j] / keep_prob (inverted dropout; also used on grads).
void dropout_apply(const Matrix& mask, double keep_prob, Matrix& X);

namespace serial {

void linear_forward(const Matrix& X, const Matrix& W,
                    const std::vector<double>& bias, Matrix& Y);
void linear_backward(const Matrix& X, const Matrix& W, const Matrix& dY,
                     Matrix& dX, Matrix& dW, std::vector<double>& dbias);
void tanh_forward(const Matrix& Z, Matrix& Y);
void tanh_backward(const Matrix& Y, const Matrix& dY, Matrix& dZ);
void sigmoid(const Matrix& Z, Matrix& S);
double masked_bce_from_scores(const Matrix& scores, const Matrix& target,
                              const Matrix& mask);
double masked_bce_with_logits(const Matrix& logits, const Matrix& target,
                              const Matrix& mask, Matrix* dlogits);
void adamw_update(std::vector<double>& theta, const std::vector<double>& grad,
                  std::vector<double>& m, std::vector<double>& v, long step,
                  const AdamwConfig& cfg, bool apply_decay);
void embedding_mean_forward(const Matrix& table, const TokenRows& token_rows,
                            Matrix& pooled);
void embedding_mean_backward(const TokenRows& token_rows, const Matrix& dpooled,
                             Matrix& dtable);
void dropout_apply(const Matrix& mask, double keep_prob, Matrix& X);

}  // namespace serial

}  // namespace misinfo::kernels
