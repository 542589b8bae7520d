#include "pfrac/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "pfrac/oracle.hpp"
#include "pfrac/pfd_core.hpp"
#include "pfrac/postprocess.hpp"
#include "pfrac/root_parser.hpp"

namespace pfrac::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<long> parse_exponents(std::string_view src) {
  std::vector<long> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = src.find(',', start);
    std::string_view item =
        trim(src.substr(start, comma == std::string_view::npos ? src.npos : comma - start));
    long value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw UsageError("exponent entry " + std::to_string(out.size() + 1) + " ('" +
                       std::string(item) + "') is not an integer");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_parse_error(std::ostream& err, std::string_view src, const ParseError& e) {
  err << "error: roots: " << e.what() << "\n  " << src << "\n  "
      << std::string(std::min(e.span().start, src.size()), ' ')
      << std::string(std::max<std::size_t>(1, e.span().end - e.span().start), '^') << "\n";
}

bool all_numeric(const RationalFunctionSpec& spec) {
  return std::all_of(spec.factors().begin(), spec.factors().end(),
                     [](const Factor& f) { return f.root.is_constant(); });
}

// Writes the payload through the streaming buffer and terminates infix output
// with a newline.
void emit(const Decomposition& d, const OutputFormat& fmt, std::ostream& os,
          std::size_t capacity) {
  OstreamSink sink(os);
  StreamBuffer buf(capacity);
  write_streaming(d, fmt, sink, buf);
  if (fmt.mode == OutputFormat::Mode::kInfix && !sink.write("\n")) {
    throw StreamWriteError(0);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Partial fraction decomposition of x^l / ((x - a1)^m1 ... (x - an)^mn).\n"
      "The result is printed and saved to the output file (overwritten)."};
  app.name("pfrac");

  std::string exponents_src;
  std::string roots_src;
  std::string format = "infix";
  bool expand_coefficients = false;
  std::size_t verify_trials = 0;
  std::uint64_t seed = 1;
  std::size_t buffer_capacity = StreamBuffer::kDefaultCapacity;
  std::string output_path = "result.out";
  bool quiet = false;

  app.add_option("exponents", exponents_src,
                 "comma separated list l,m1,...,mn: numerator degree, then multiplicities")
      ->required();
  app.add_option("roots", roots_src, "comma separated list of roots a1,...,an")->required();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"infix", "structured"}))
      ->capture_default_str();
  app.add_flag("--expand", expand_coefficients, "expand coefficients before printing");
  app.add_option("--verify", verify_trials,
                 "check the result at N random substitutions (and against the linear-algebra "
                 "oracle when every root is a number)");
  app.add_option("--seed", seed, "seed for --verify")->capture_default_str();
  app.add_option("--buffer", buffer_capacity, "output buffer capacity in bytes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-o,--output", output_path, "output file")->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "do not print the result to standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  OutputFormat fmt;
  fmt.mode = format == "structured" ? OutputFormat::Mode::kStructured
                                    : OutputFormat::Mode::kInfix;
  fmt.expand_coefficients = expand_coefficients;

  std::optional<RationalFunctionSpec> spec;
  try {
    std::vector<long> exponents = parse_exponents(exponents_src);
    std::vector<Expr> roots;
    try {
      roots = parse_root_list(roots_src);
    } catch (const ParseError& e) {
      print_parse_error(err, roots_src, e);
      return kExitUsage;
    }
    if (exponents.size() != roots.size() + 1) {
      throw UsageError(std::to_string(exponents.size()) + " exponent entries require " +
                       std::to_string(exponents.size() - 1) + " roots, " +
                       std::to_string(roots.size()) + " given");
    }
    if (exponents[0] < 0) throw UsageError("numerator exponent must be non-negative");
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      long m = exponents[i + 1];
      if (m < 1) {
        throw UsageError("multiplicity " + std::to_string(i + 1) + " must be at least 1");
      }
      factors.push_back({roots[i], static_cast<unsigned>(m)});
    }
    spec.emplace(static_cast<unsigned>(exponents[0]), std::move(factors));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Decomposition d = decompose(*spec);

  try {
    if (!quiet) emit(d, fmt, out, buffer_capacity);
    std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open " + output_path + " for writing");
    emit(d, fmt, file, buffer_capacity);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (verify_trials > 0) {
    SubstitutionReport report = check_by_substitution(*spec, d, verify_trials, seed, 5);
    err << report.describe() << "\n";
    bool ok = report.passed;
    if (all_numeric(*spec)) {
      std::vector<Rational> roots;
      std::vector<unsigned> mults;
      for (const Factor& f : spec->factors()) {
        roots.push_back(f.root.value());
        mults.push_back(f.multiplicity);
      }
      bool match = same_terms(d, oracle_decompose(spec->numerator_degree(), roots, mults));
      err << "oracle comparison " << (match ? "passed" : "FAILED") << "\n";
      ok = ok && match;
    }
    if (!ok) return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace pfrac::cli
