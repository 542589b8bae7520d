#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pfrac/errors.hpp"
#include "pfrac/pfd_core.hpp"

namespace pfrac {

struct OutputFormat {
  enum class Mode { kInfix, kStructured };
  Mode mode = Mode::kInfix;
  bool expand_coefficients = false;
};

// Merges terms sharing a root and order (poles) or a degree (monomials),
// drops zero coefficients and restores the canonical term order. Roots are
// compared structurally; duplicate root table entries fold onto the first.
// Idempotent.
Decomposition collect(const Decomposition& d);

// Calls emit once per rendered term, in output order. Concatenating the
// chunks gives serialize(d, fmt).
//
// Infix: monomials by ascending degree, then poles by (root index, order),
// e.g. "(1/2)*(x + 1)^(-1) - (x + 2)^(-1) + (1/2)*(x + 3)^(-1)"; an empty
// decomposition renders as "0".
// Structured: one LF-terminated record per term, "M <degree> <coef>" or
// "P <root index, 1-based> <order> <coef>".
void render_terms(const Decomposition& d, const OutputFormat& fmt,
                  const std::function<void(std::string_view)>& emit);

std::string serialize(const Decomposition& d, const OutputFormat& fmt = {});

class ByteSink {
 public:
  virtual ~ByteSink() = default;
  // Returns false when the bytes could not be written.
  virtual bool write(std::string_view bytes) = 0;
};

class OstreamSink : public ByteSink {
 public:
  explicit OstreamSink(std::ostream& os) : os_(os) {}
  bool write(std::string_view bytes) override;

 private:
  std::ostream& os_;
};

class StreamWriteError : public Error {
 public:
  explicit StreamWriteError(std::size_t bytes_written);
  std::size_t bytes_written() const { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

// Fixed-capacity staging area between the term renderer and a sink.
class StreamBuffer {
 public:
  static constexpr std::size_t kDefaultCapacity = 65536;

  explicit StreamBuffer(std::size_t capacity = kDefaultCapacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t pending() const { return pending_.size(); }

  // Statistics from the most recent write_streaming call.
  std::size_t flushes() const { return flushes_; }
  std::size_t peak_pending() const { return peak_pending_; }
  // Largest pending + in-flight term size observed.
  std::size_t peak_resident() const { return peak_resident_; }
  std::size_t largest_term() const { return largest_term_; }

 private:
  friend std::size_t write_streaming(const Decomposition&, const OutputFormat&, ByteSink&,
                                     StreamBuffer&);
  std::size_t capacity_;
  std::string pending_;
  std::size_t flushes_ = 0;
  std::size_t peak_pending_ = 0;
  std::size_t peak_resident_ = 0;
  std::size_t largest_term_ = 0;
};

// Renders terms one at a time into buf, flushing to sink whenever the next
// term would overflow it; terms larger than the capacity bypass the buffer.
// Returns the number of bytes written. Throws StreamWriteError on sink
// failure.
std::size_t write_streaming(const Decomposition& d, const OutputFormat& fmt, ByteSink& sink,
                            StreamBuffer& buf);

}  // namespace pfrac
