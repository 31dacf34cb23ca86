#pragma once

#include <chrono>
#include <limits>

namespace cnp {

using Clock = std::chrono::steady_clock;

/// Wall-clock stop point; `never()` disables the check.
class Deadline {
 public:
  static Deadline never() { return Deadline(Clock::time_point::max()); }
  static Deadline after(double seconds) {
    if (seconds >= 1e9) return never();
    return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds)));
  }

  bool unlimited() const { return at_ == Clock::time_point::max(); }
  bool expired() const { return !unlimited() && Clock::now() >= at_; }
  double remaining_seconds() const {
    if (unlimited()) return std::numeric_limits<double>::infinity();
    return std::chrono::duration<double>(at_ - Clock::now()).count();
  }

  /// The earlier of the two deadlines.
  Deadline min(const Deadline& other) const { return at_ <= other.at_ ? *this : other; }

 private:
  explicit Deadline(Clock::time_point at) : at_(at) {}
  Clock::time_point at_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_;
};

}  // namespace cnp
