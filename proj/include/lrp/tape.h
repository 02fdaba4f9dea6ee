#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lrp {

using Mat = Eigen::MatrixXd;

// A learnable dense array plus its gradient and Adam moments.
struct Param {
  std::string name;
  Mat value;
  Mat grad;
  Mat m;
  Mat v;

  Param() = default;
  Param(std::string n, int rows, int cols)
      : name(std::move(n)),
        value(Mat::Zero(rows, cols)),
        grad(Mat::Zero(rows, cols)),
        m(Mat::Zero(rows, cols)),
        v(Mat::Zero(rows, cols)) {}

  void zero_grad() { grad.setZero(); }
};

struct Var {
  int i = -1;
  bool valid() const { return i >= 0; }
};

// Reverse-mode tape over dense matrices. Every forward op records a closure
// that routes gradients to its parents; backward() walks the tape once in
// reverse. Gradients of bound Params accumulate into Param::grad.
class Tape {
 public:
  void clear();
  size_t size() const { return nodes_.size(); }

  Var input(Mat v);
  Var param(Param& p);  // cached: repeated binding returns the same node

  const Mat& val(Var v) const { return nodes_[v.i].val; }
  const Mat& grad_of(Var v) const { return nodes_[v.i].grad; }

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var cmul(Var a, Var b);
  Var scale(Var a, double s);
  Var add_rowvec(Var a, Var r);  // r is 1 x C, broadcast over rows
  Var add_colvec(Var a, Var c);  // c is R x 1, broadcast over cols
  Var add_scalar(Var a, Var s);  // s is 1 x 1
  Var sigmoid(Var a);
  Var tanh(Var a);
  Var relu(Var a);
  Var transpose(Var a);
  Var concat_cols(Var a, Var b);
  Var concat_rows(const std::vector<Var>& parts);
  Var slice_rows(Var a, int r0, int h);
  Var slice_cols(Var a, int c0, int w);
  Var pick_rows(Var a, std::vector<int> rows);
  Var row_sum(Var a);  // R x 1
  Var sum_all(Var a);  // 1 x 1
  Var mean_all(Var a);
  Var mul_const(Var a, Mat mask);  // elementwise with a constant (dropout)
  Var softmax_rows(Var a);
  // Mean over rows of -log softmax(logits_row)[target]; 1 x 1.
  Var cross_entropy_rows(Var logits, std::vector<int> targets);

  void backward(Var loss);

 private:
  struct Node {
    Mat val;
    Mat grad;
    bool has_grad = false;
    std::function<void(Tape&)> back;
  };

  std::vector<Node> nodes_;
  std::vector<std::pair<int, Param*>> bindings_;
  std::map<const Param*, int> param_cache_;

  Var push(Mat val, std::function<void(Tape&)> back);
  Mat& g(int i);
};

}  // namespace lrp
