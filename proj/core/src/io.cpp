#include "sosc/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace sosc::io {

namespace {

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Non-empty lines with comments stripped, each remembering its line number.
class Lines {
 public:
  explicit Lines(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto tokens = split(line);
      if (!tokens.empty()) lines_.push_back({number, std::move(tokens)});
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }
  const std::vector<std::string>& peek() const { return lines_.at(next_).tokens; }
  std::size_t line_number() const { return done() ? (lines_.empty() ? 1 : lines_.back().number) : lines_[next_].number; }

  const std::vector<std::string>& take() {
    if (done()) fail("unexpected end of input");
    current_ = lines_[next_].number;
    return lines_[next_++].tokens;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = current_ ? current_ : line_number();
    throw ParseError("line " + std::to_string(line) + ": " + what);
  }

  Rational rational(const std::string& token) const {
    try {
      return parse_rational(token);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  std::size_t integer(const std::string& token) const {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) fail("expected a nonnegative integer, got '" + token + "'");
    return value;
  }

  std::size_t index(const std::string& token, std::size_t bound) const {
    std::size_t v = integer(token);
    if (v < 1 || v > bound) fail("index " + token + " out of range 1.." + std::to_string(bound));
    return v - 1;
  }

  /// Parses "key=<integer>".
  std::size_t field(const std::string& token, std::string_view key) const {
    std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0) fail("expected '" + prefix + "...', got '" + token + "'");
    return integer(token.substr(prefix.size()));
  }

  void expect_end() {
    if (!done()) {
      take();
      fail("unexpected trailing content");
    }
  }

  /// Section label "NAME:" with an optional integer argument.
  std::optional<std::size_t> section(std::string_view name) {
    const auto& t = take();
    if (t[0] != std::string(name) + ":") fail("expected section '" + std::string(name) + ":', got '" + t[0] + "'");
    if (t.size() > 2) fail("too many tokens after '" + t[0] + "'");
    if (t.size() == 2) return integer(t[1]);
    return std::nullopt;
  }

 private:
  struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t current_ = 0;
};

ExponentVector read_exponents(const Lines& in, const std::vector<std::string>& t, std::size_t from, std::size_t n) {
  if (t.size() != from + n) in.fail("expected " + std::to_string(n) + " exponents");
  std::vector<unsigned> e(n);
  for (std::size_t v = 0; v < n; ++v) e[v] = static_cast<unsigned>(in.integer(t[from + v]));
  return ExponentVector(std::move(e));
}

void write_exponents(std::ostringstream& out, const ExponentVector& e) {
  for (std::size_t v = 0; v < e.size(); ++v) out << ' ' << e[v];
}

Form read_form_lines(Lines& in, bool stop_at_section) {
  const auto& h = in.take();
  if (h[0] != "form") in.fail("expected header 'form', got '" + h[0] + "'");
  if (h.size() != 3) in.fail("header 'form' needs n= and d=");
  std::size_t n = in.field(h[1], "n");
  auto d = static_cast<unsigned>(in.field(h[2], "d"));
  if (n == 0) in.fail("form needs at least one variable");
  Form f(n, d);
  std::map<ExponentVector, bool> seen;
  while (!in.done()) {
    if (stop_at_section && in.peek()[0].back() == ':') break;
    const auto& t = in.take();
    Rational c = in.rational(t[0]);
    ExponentVector e = read_exponents(in, t, 1, n);
    if (e.degree() != d) in.fail("term degree " + std::to_string(e.degree()) + " does not match d=" + std::to_string(d));
    if (!seen.emplace(e, true).second) in.fail("repeated monomial");
    f.add_term(e, c);
  }
  return f;
}

void write_form_lines(std::ostringstream& out, const Form& f) {
  out << "form n=" << f.n_vars() << " d=" << f.degree() << '\n';
  for (const auto& [e, c] : f.terms()) {
    out << format_rational(c);
    write_exponents(out, e);
    out << '\n';
  }
}

std::string header_keyword(std::string_view text) {
  Lines in(text);
  if (in.done()) throw ParseError("line 1: empty document");
  return in.peek()[0];
}

}  // namespace

std::string write_form(const Form& f) {
  std::ostringstream out;
  write_form_lines(out, f);
  return out.str();
}

Form read_form(std::string_view text) {
  Lines in(text);
  Form f = read_form_lines(in, false);
  in.expect_end();
  return f;
}

std::string write_biquadratic(const BiquadraticForm& b) {
  std::ostringstream out;
  out << "biq n=" << b.n() << '\n';
  for (const auto& [k, c] : b.coefficients())
    out << format_rational(c) << ' ' << k.i + 1 << ' ' << k.j + 1 << ' ' << k.k + 1 << ' ' << k.l + 1 << '\n';
  return out.str();
}

BiquadraticForm read_biquadratic(std::string_view text) {
  Lines in(text);
  const auto& h = in.take();
  if (h[0] != "biq") in.fail("expected header 'biq', got '" + h[0] + "'");
  if (h.size() != 2) in.fail("header 'biq' needs n=");
  std::size_t n = in.field(h[1], "n");
  if (n == 0) in.fail("biquadratic form needs n >= 1");
  BiquadraticForm b(n);
  std::map<BiquadKey, bool> seen;
  while (!in.done()) {
    const auto& t = in.take();
    if (t.size() != 5) in.fail("expected 'NUM/DEN i j k l'");
    Rational c = in.rational(t[0]);
    BiquadKey key{static_cast<unsigned>(in.index(t[1], n)), static_cast<unsigned>(in.index(t[2], n)),
                  static_cast<unsigned>(in.index(t[3], n)), static_cast<unsigned>(in.index(t[4], n))};
    if (key.i > key.j || key.k > key.l) in.fail("indices must satisfy i <= j and k <= l");
    if (!seen.emplace(key, true).second) in.fail("repeated monomial");
    b.add(key, c);
  }
  return b;
}

std::string write_polymatrix(const PolyMatrix& m) {
  std::ostringstream out;
  out << "polymatrix dim=" << m.dim() << " n=" << m.n_vars() << " d=" << m.degree() << '\n';
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      for (const auto& [e, coeff] : m(r, c).terms()) {
        out << format_rational(coeff) << ' ' << r + 1 << ' ' << c + 1;
        write_exponents(out, e);
        out << '\n';
      }
  return out.str();
}

PolyMatrix read_polymatrix(std::string_view text) {
  Lines in(text);
  const auto& h = in.take();
  if (h[0] != "polymatrix") in.fail("expected header 'polymatrix', got '" + h[0] + "'");
  if (h.size() != 4) in.fail("header 'polymatrix' needs dim=, n= and d=");
  std::size_t dim = in.field(h[1], "dim");
  std::size_t n = in.field(h[2], "n");
  auto d = static_cast<unsigned>(in.field(h[3], "d"));
  if (dim == 0 || n == 0) in.fail("polymatrix needs dim >= 1 and n >= 1");
  std::vector<Form> entries(dim * dim, Form(n, d));
  std::map<std::pair<std::size_t, ExponentVector>, bool> seen;
  while (!in.done()) {
    const auto& t = in.take();
    if (t.size() < 3) in.fail("expected 'NUM/DEN r c e1 ... en'");
    Rational c = in.rational(t[0]);
    std::size_t r = in.index(t[1], dim);
    std::size_t col = in.index(t[2], dim);
    ExponentVector e = read_exponents(in, t, 3, n);
    if (e.degree() != d) in.fail("term degree does not match d=" + std::to_string(d));
    if (!seen.emplace(std::pair{r * dim + col, e}, true).second) in.fail("repeated monomial");
    entries[r * dim + col].add_term(e, c);
  }
  PolyMatrix m(dim, n, d);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m.set(r, c, entries[r * dim + c]);
  return m;
}

std::string write_sos_certificate(const SosCertificate& c) {
  const std::size_t n = c.n_vars();
  const std::size_t x = c.x_vars == 0 ? n : c.x_vars;
  std::ostringstream out;
  out << "sos_certificate n=" << n << " x=" << x << '\n';
  out << "Z: " << c.z.size() << '\n';
  for (const auto& e : c.z) {
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (v == x) out << " |";
      out << (v == 0 ? "" : " ") << e[v];
    }
    out << '\n';
  }
  out << "Q: " << c.q.dim() << '\n';
  for (std::size_t r = 0; r < c.q.dim(); ++r) {
    for (std::size_t col = 0; col < c.q.dim(); ++col) out << (col ? " " : "") << format_rational(c.q(r, col));
    out << '\n';
  }
  out << "MULTIPLIER:\n";
  write_form_lines(out, c.multiplier);
  out << "SCALE: " << format_rational(c.scale) << '\n';
  return out.str();
}

SosCertificate read_sos_certificate(std::string_view text) {
  Lines in(text);
  const auto& h = in.take();
  if (h[0] != "sos_certificate") in.fail("expected header 'sos_certificate', got '" + h[0] + "'");
  if (h.size() != 3) in.fail("header 'sos_certificate' needs n= and x=");
  SosCertificate cert;
  std::size_t n = in.field(h[1], "n");
  cert.x_vars = in.field(h[2], "x");
  if (n == 0 || cert.x_vars == 0 || cert.x_vars > n) in.fail("need 1 <= x <= n");

  auto m = in.section("Z");
  if (!m) in.fail("section 'Z:' needs a count");
  for (std::size_t r = 0; r < *m; ++r) {
    std::vector<std::string> t = in.take();
    if (cert.x_vars < n) {
      if (t.size() != n + 1 || t[cert.x_vars] != "|") in.fail("expected x-block '|' y-block exponents");
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(cert.x_vars));
    }
    cert.z.push_back(read_exponents(in, t, 0, n));
  }

  auto dim = in.section("Q");
  if (!dim) in.fail("section 'Q:' needs a dimension");
  if (*dim != *m) in.fail("Q dimension differs from the number of monomials");
  std::vector<Rational> values;
  while (values.size() < *dim * *dim) {
    for (const auto& tok : in.take()) {
      if (values.size() == *dim * *dim) in.fail("too many entries in Q");
      values.push_back(in.rational(tok));
    }
  }
  RationalMatrix q(*dim, *dim);
  for (std::size_t r = 0; r < *dim; ++r)
    for (std::size_t c = 0; c < *dim; ++c) q(r, c) = values[r * *dim + c];
  try {
    cert.q = SymRationalMatrix(std::move(q));
  } catch (const InvalidArgument&) {
    in.fail("Q is not symmetric");
  }

  if (in.section("MULTIPLIER")) in.fail("section 'MULTIPLIER:' takes no argument");
  cert.multiplier = read_form_lines(in, true);
  if (cert.multiplier.n_vars() != n) in.fail("multiplier must use n=" + std::to_string(n) + " variables");

  const auto& s = in.take();
  if (s[0] != "SCALE:" || s.size() != 2) in.fail("expected 'SCALE: NUM/DEN'");
  cert.scale = in.rational(s[1]);
  if (cert.scale == 0) in.fail("scale must be nonzero");
  in.expect_end();
  return cert;
}

std::string write_dual_certificate(const DualCertificate& c) {
  std::ostringstream out;
  out << "dual_certificate n=" << c.ordering.n() << '\n';
  out << "ORDER: " << (c.order == DualCertificate::Order::Builtin36 ? "builtin36" : "lex") << '\n';
  out << "C: " << c.c.size() << '\n';
  for (const auto& v : c.c) out << format_rational(v) << '\n';
  return out.str();
}

DualCertificate read_dual_certificate(std::string_view text) {
  Lines in(text);
  const auto& h = in.take();
  if (h[0] != "dual_certificate") in.fail("expected header 'dual_certificate', got '" + h[0] + "'");
  if (h.size() != 2) in.fail("header 'dual_certificate' needs n=");
  std::size_t n = in.field(h[1], "n");
  const auto& o = in.take();
  if (o[0] != "ORDER:" || o.size() != 2) in.fail("expected 'ORDER: builtin36 | lex'");
  DualCertificate::Order order;
  if (o[1] == "builtin36") {
    order = DualCertificate::Order::Builtin36;
  } else if (o[1] == "lex") {
    order = DualCertificate::Order::Lex;
  } else {
    in.fail("unknown ordering '" + o[1] + "'");
  }
  auto len = in.section("C");
  if (!len) in.fail("section 'C:' needs a length");
  RationalVector c;
  for (std::size_t r = 0; r < *len; ++r) {
    const auto& t = in.take();
    if (t.size() != 1) in.fail("expected one rational per line");
    c.push_back(in.rational(t[0]));
  }
  in.expect_end();
  try {
    return DualCertificate::make(order, n, std::move(c));
  } catch (const InvalidArgument& e) {
    in.fail(e.what());
  }
}

std::string write_document(const Document& doc) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Form>) return write_form(v);
        else if constexpr (std::is_same_v<T, BiquadraticForm>) return write_biquadratic(v);
        else if constexpr (std::is_same_v<T, PolyMatrix>) return write_polymatrix(v);
        else if constexpr (std::is_same_v<T, SosCertificate>) return write_sos_certificate(v);
        else return write_dual_certificate(v);
      },
      doc);
}

Document read_document(std::string_view text) {
  const std::string kw = header_keyword(text);
  if (kw == "form") return read_form(text);
  if (kw == "biq") return read_biquadratic(text);
  if (kw == "polymatrix") return read_polymatrix(text);
  if (kw == "sos_certificate") return read_sos_certificate(text);
  if (kw == "dual_certificate") return read_dual_certificate(text);
  throw ParseError("line 1: unknown document type '" + kw + "'");
}

Document load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return read_document(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save(const std::filesystem::path& path, const Document& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << write_document(doc);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t n_vars, std::size_t x_vars)
      : text_(text), n_(n_vars), x_(x_vars < n_vars ? x_vars : n_vars) {}

  Form parse() {
    std::vector<std::pair<ExponentVector, Rational>> terms;
    skip();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [e, c] = term();
      terms.emplace_back(std::move(e), sign * c);
      first = false;
      skip();
    }
    unsigned d = terms.front().first.degree();
    Form f(n_, d);
    for (const auto& [e, c] : terms) {
      if (e.degree() != d) fail("polynomial is not homogeneous");
      f.add_term(e, c);
    }
    return f;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::pair<ExponentVector, Rational> term() {
    ExponentVector e(n_);
    Rational c = 1;
    bool any = false;
    while (true) {
      skip();
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        c *= number();
      } else if (ch == 'x' || ch == 'y') {
        std::size_t var = variable();
        unsigned power = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          power = static_cast<unsigned>(digits());
        }
        e[var] += power;
      } else {
        fail(any ? "expected a factor after '*'" : "expected a coefficient or variable");
      }
      any = true;
      skip();
      if (peek() == '*') {
        ++pos_;
      } else if (peek() != 'x' && peek() != 'y' && !std::isdigit(static_cast<unsigned char>(peek()))) {
        break;
      }
    }
    return {std::move(e), c};
  }

  std::uint64_t digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail("number too large");
    return v;
  }

  Rational number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& err) {
      fail(err.what());
    }
  }

  std::size_t variable() {
    char block = text_[pos_++];
    std::size_t k = digits();
    std::size_t limit = block == 'x' ? x_ : n_ - x_;
    if (k < 1 || k > limit) fail(std::string(1, block) + std::to_string(k) + " is not a variable here");
    return block == 'x' ? k - 1 : x_ + k - 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t n_;
  std::size_t x_;
};

}  // namespace

Form parse_polynomial(std::string_view text, std::size_t n_vars, std::size_t x_vars) {
  if (n_vars == 0) throw InvalidArgument("polynomial needs at least one variable");
  return PolynomialParser(text, n_vars, x_vars).parse();
}

}  // namespace sosc::io
