#pragma once

#include <atomic>
#include <memory>

#include "rgrad/errors.hpp"

namespace rgrad {

// Cooperative cancellation. Copies share the flag; a default-constructed
// token can never be cancelled.
class CancelToken {
 public:
  CancelToken() = default;

  static CancelToken make() {
    CancelToken t;
    t.flag_ = std::make_shared<std::atomic<bool>>(false);
    return t;
  }

  void cancel() const {
    if (flag_) flag_->store(true, std::memory_order_relaxed);
  }

  [[nodiscard]] bool cancelled() const {
    return flag_ && flag_->load(std::memory_order_relaxed);
  }

  void check() const {
    if (cancelled()) throw BudgetExhausted("cancelled");
  }

 private:
  std::shared_ptr<std::atomic<bool>> flag_;
};

}  // namespace rgrad
