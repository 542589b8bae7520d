#include "pfrac/postprocess.hpp"

#include <map>
#include <ostream>

namespace pfrac {

Decomposition collect(const Decomposition& d) {
  std::vector<std::size_t> canonical_index(d.roots.size());
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    std::size_t k = 0;
    while (!(d.roots[k] == d.roots[i])) ++k;
    canonical_index[i] = k;
  }

  std::map<unsigned, std::vector<Expr>> monomials;
  std::map<std::pair<std::size_t, unsigned>, std::vector<Expr>> poles;
  for (const MonomialTerm& t : d.monomials) monomials[t.degree].push_back(t.coefficient);
  for (const PoleTerm& t : d.poles) {
    if (t.pole_index >= d.roots.size()) {
      throw ContractViolation("pole index " + std::to_string(t.pole_index) + " out of range");
    }
    poles[{canonical_index[t.pole_index], t.order}].push_back(t.coefficient);
  }

  Decomposition out;
  out.roots = d.roots;
  for (auto& [degree, terms] : monomials) {
    Expr c = Expr::sum(std::move(terms));
    if (!c.is_zero()) out.monomials.push_back({degree, std::move(c)});
  }
  for (auto& [key, terms] : poles) {
    Expr c = Expr::sum(std::move(terms));
    if (!c.is_zero()) out.poles.push_back({key.first, key.second, std::move(c)});
  }
  return out;
}

namespace {

std::string shifted_variable(const Expr& root) {
  std::string out(kVariable);
  Expr neg = -root;
  auto render_term = [&](const Expr& t) {
    if (has_negative_sign(t)) {
      out += " - " + to_infix(-t);
    } else {
      out += " + " + to_infix(t);
    }
  };
  if (neg.kind() == Expr::Kind::kSum) {
    for (const Expr& t : neg.operands()) render_term(t);
  } else {
    render_term(neg);
  }
  return out;
}

std::string pole_part(const Expr& root, unsigned order) {
  std::string exponent = "^(-" + std::to_string(order) + ")";
  if (root.is_zero()) return std::string(kVariable) + exponent;
  return "(" + shifted_variable(root) + ")" + exponent;
}

std::string monomial_part(unsigned degree) {
  if (degree == 0) return {};
  if (degree == 1) return std::string(kVariable);
  return std::string(kVariable) + "^" + std::to_string(degree);
}

// Renders |coefficient| * variable_part and reports the sign separately.
std::string infix_body(const Expr& coefficient, const std::string& variable_part,
                       bool& negative) {
  negative = has_negative_sign(coefficient);
  Expr mag = negative ? -coefficient : coefficient;
  if (variable_part.empty()) {
    if (mag.kind() == Expr::Kind::kSum) return "(" + to_infix(mag) + ")";
    return to_infix(mag);
  }
  if (mag.is_one()) return variable_part;
  std::string c = to_infix(mag);
  if (mag.kind() == Expr::Kind::kSum || (mag.is_constant() && !mag.value().is_integer())) {
    c = "(" + c + ")";
  }
  return c + "*" + variable_part;
}

}  // namespace

void render_terms(const Decomposition& d, const OutputFormat& fmt,
                  const std::function<void(std::string_view)>& emit) {
  auto prepare = [&](const Expr& c) { return fmt.expand_coefficients ? expand(c) : c; };

  if (fmt.mode == OutputFormat::Mode::kStructured) {
    for (const MonomialTerm& t : d.monomials) {
      Expr c = prepare(t.coefficient);
      if (c.is_zero()) continue;
      emit("M " + std::to_string(t.degree) + " " + to_infix(c) + "\n");
    }
    for (const PoleTerm& t : d.poles) {
      Expr c = prepare(t.coefficient);
      if (c.is_zero()) continue;
      emit("P " + std::to_string(t.pole_index + 1) + " " + std::to_string(t.order) + " " +
           to_infix(c) + "\n");
    }
    return;
  }

  bool first = true;
  auto emit_infix = [&](const Expr& raw, const std::string& variable_part) {
    Expr c = prepare(raw);
    if (c.is_zero()) return;
    bool negative = false;
    std::string body = infix_body(c, variable_part, negative);
    if (first) {
      emit(negative ? "-" + body : body);
      first = false;
    } else {
      emit((negative ? " - " : " + ") + body);
    }
  };
  for (const MonomialTerm& t : d.monomials) emit_infix(t.coefficient, monomial_part(t.degree));
  for (const PoleTerm& t : d.poles) {
    emit_infix(t.coefficient, pole_part(d.roots.at(t.pole_index), t.order));
  }
  if (first) emit("0");
}

std::string serialize(const Decomposition& d, const OutputFormat& fmt) {
  std::string out;
  render_terms(d, fmt, [&](std::string_view chunk) { out += chunk; });
  return out;
}

bool OstreamSink::write(std::string_view bytes) {
  os_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(os_);
}

StreamWriteError::StreamWriteError(std::size_t bytes_written)
    : Error("output sink failed after " + std::to_string(bytes_written) + " bytes"),
      bytes_written_(bytes_written) {}

StreamBuffer::StreamBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ContractViolation("stream buffer capacity must be positive");
  pending_.reserve(capacity);
}

std::size_t write_streaming(const Decomposition& d, const OutputFormat& fmt, ByteSink& sink,
                            StreamBuffer& buf) {
  buf.pending_.clear();
  buf.flushes_ = 0;
  buf.peak_pending_ = 0;
  buf.peak_resident_ = 0;
  buf.largest_term_ = 0;
  std::size_t written = 0;

  auto push = [&](std::string_view bytes) {
    if (!sink.write(bytes)) throw StreamWriteError(written);
    written += bytes.size();
    ++buf.flushes_;
  };
  auto flush = [&] {
    if (buf.pending_.empty()) return;
    push(buf.pending_);
    buf.pending_.clear();
  };

  render_terms(d, fmt, [&](std::string_view term) {
    buf.largest_term_ = std::max(buf.largest_term_, term.size());
    buf.peak_resident_ = std::max(buf.peak_resident_, buf.pending_.size() + term.size());
    if (buf.pending_.size() + term.size() > buf.capacity_) flush();
    if (term.size() > buf.capacity_) {
      push(term);
      return;
    }
    buf.pending_ += term;
    buf.peak_pending_ = std::max(buf.peak_pending_, buf.pending_.size());
  });
  flush();
  return written;
}

}  // namespace pfrac
