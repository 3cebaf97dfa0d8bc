// Plugs a user-defined online algorithm into the adversary game and prints
// the per-batch ratios and the weight audit.
//
//   custom_algorithm [k] [N]

#include <cstdlib>
#include <iostream>
#include <optional>

#include "rectlb/rectlb.hpp"

namespace {

// Stacks items in columns: each column is as wide as its first item and
// items go on top of each other until the column is full.
class ColumnFit : public rectlb::OnlineAlgorithm {
 public:
  std::string name() const override { return "column_fit"; }

  rectlb::Decision place(const rectlb::Item& item) override {
    using rectlb::Scalar;
    if (!open_ || open_->width != item.width || open_->top + item.height > Scalar(1)) {
      if (!bins_ || right_ + item.width > Scalar(1)) {
        bin_ = bins_++;
        right_ = Scalar(0);
      }
      open_ = Column{right_, item.width, Scalar(0)};
      right_ += item.width;
    }
    rectlb::Decision d{bin_, open_->x, open_->top};
    open_->top += item.height;
    return d;
  }

 private:
  struct Column {
    rectlb::Scalar x, width, top;
  };
  std::optional<Column> open_;
  std::size_t bins_ = 0;
  std::size_t bin_ = 0;
  rectlb::Scalar right_;
};

}  // namespace

int main(int argc, char** argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 4;
  const long n = argc > 2 ? std::atol(argv[2]) : 1000;
  const auto inst = rectlb::build_instance(k, n);
  ColumnFit alg;
  const auto trace = rectlb::run_game(inst, alg);
  std::cout << rectlb::to_csv(trace);
  std::cout << "best " << trace.best_batch.label() << ' ' << rectlb::to_decimal(trace.best_ratio, 6) << ", "
            << trace.audit_violations() << " audit violations over " << trace.audit.size() << " bins\n";
  return trace.audit_violations() == 0 ? 0 : 1;
}
