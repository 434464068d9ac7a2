#pragma once

// Exceptions must not cross an OpenMP region boundary. Workers record the
// first failure here and the caller rethrows after the region closes.

#include <exception>
#include <mutex>

namespace fourpoly::detail {

class FirstError {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace fourpoly::detail
