#include <hyperaut/forms.hpp>

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace hyperaut {

Form Form::from_terms(int num_vars, TermMap terms, bool known_smooth) {
  if (num_vars < 2) throw PreconditionError("a form needs at least 2 variables");
  int degree = -1;
  for (auto it = terms.begin(); it != terms.end();) {
    if (static_cast<int>(it->first.exps.size()) != num_vars)
      throw PreconditionError("monomial arity does not match num_vars");
    for (int e : it->first.exps)
      if (e < 0) throw PreconditionError("negative exponent");
    if (it->second == 0) {
      it = terms.erase(it);
      continue;
    }
    int d = it->first.degree();
    if (degree < 0) degree = d;
    else if (d != degree) throw NotHomogeneousError(degree, d);
    ++it;
  }
  if (terms.empty()) throw ZeroFormError();
  Form f;
  f.num_vars_ = num_vars;
  f.degree_ = degree;
  f.known_smooth_ = known_smooth;
  f.terms_ = std::move(terms);
  return f;
}

namespace {

class FormParser {
 public:
  FormParser(const std::string& text, int num_vars)
      : text_(text), num_vars_(num_vars) {}

  Form::TermMap run() {
    Form::TermMap terms;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      ++pos_;
      sign = -1;
    } else if (peek() == '+') {
      ++pos_;
    }
    parse_term(terms, sign);
    skip_ws();
    while (pos_ < text_.size()) {
      char c = peek();
      if (c != '+' && c != '-')
        throw SyntaxError("expected '+' or '-' between terms", pos_);
      ++pos_;
      parse_term(terms, c == '-' ? -1 : 1);
      skip_ws();
    }
    return terms;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Int parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw SyntaxError("expected an integer", pos_);
    return Int(text_.substr(start, pos_ - start));
  }

  unsigned parse_small_integer(const char* what) {
    std::size_t at = pos_;
    Int v = parse_integer();
    if (v > 1000000) throw SyntaxError(std::string(what) + " too large", at);
    return static_cast<unsigned>(v.get_ui());
  }

  // factor := 'x' index ['^' exponent]
  void parse_factor(std::vector<int>& exps) {
    skip_ws();
    std::size_t at = pos_;
    if (peek() != 'x') throw SyntaxError("expected a variable factor 'x<index>'", pos_);
    ++pos_;
    skip_ws();
    unsigned index = parse_small_integer("variable index");
    if (static_cast<int>(index) >= num_vars_)
      throw UnknownVariableError(index, static_cast<unsigned>(num_vars_), at);
    unsigned exponent = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      exponent = parse_small_integer("exponent");
    }
    exps[index] += static_cast<int>(exponent);
  }

  void parse_term(Form::TermMap& terms, int sign) {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("expected a term", pos_);
    Int coeff(1);
    bool have_factor = false;
    std::vector<int> exps(num_vars_, 0);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_integer();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        parse_factor(exps);
        have_factor = true;
      }
      // bare integer: a degree-0 term
    } else {
      parse_factor(exps);
      have_factor = true;
    }
    if (have_factor) {
      skip_ws();
      while (peek() == '*') {
        ++pos_;
        parse_factor(exps);
        skip_ws();
      }
    }
    if (sign < 0) coeff = -coeff;
    terms[Monomial{std::move(exps)}] += coeff;
  }

  const std::string& text_;
  int num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Form parse_form(const std::string& text, int num_vars) {
  if (num_vars < 2) throw PreconditionError("a form needs at least 2 variables");
  FormParser parser(text, num_vars);
  return Form::from_terms(num_vars, parser.run());
}

std::string render(const Form& f) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : f.terms()) {
    Int c = coeff;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
      first = false;
    } else {
      if (c < 0) {
        out << " - ";
        c = -c;
      } else {
        out << " + ";
      }
    }
    bool constant = mono.degree() == 0;
    bool printed = false;
    if (c != 1 || constant) {
      out << c.get_str();
      printed = true;
    }
    for (std::size_t i = 0; i < mono.exps.size(); ++i) {
      if (mono.exps[i] == 0) continue;
      if (printed) out << "*";
      out << "x" << i;
      if (mono.exps[i] > 1) out << "^" << mono.exps[i];
      printed = true;
    }
  }
  return out.str();
}

Form read_form_file(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error("empty form file");
  int nv = 0, deg = 0;
  {
    std::istringstream hs(header);
    std::string a, b;
    hs >> a >> b;
    if (a.rfind("vars=", 0) != 0 || b.rfind("degree=", 0) != 0)
      throw Error("form file header must be `vars=<n> degree=<d>`");
    try {
      nv = std::stoi(a.substr(5));
      deg = std::stoi(b.substr(7));
    } catch (const std::exception&) {
      throw Error("form file header must be `vars=<n> degree=<d>`");
    }
  }
  std::string expr, line;
  while (std::getline(in, line)) expr += line + "\n";
  Form f = parse_form(expr, nv);
  if (f.degree() != deg)
    throw Error("form file declares degree " + std::to_string(deg) +
                " but the expression has degree " + std::to_string(f.degree()));
  return f;
}

Form load_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open form file: " + path);
  return read_form_file(in);
}

std::optional<Form> partial_derivative(const Form& f, int i) {
  if (i < 0 || i >= f.num_vars()) throw PreconditionError("variable index out of range");
  Form::TermMap out;
  for (const auto& [mono, coeff] : f.terms()) {
    if (mono.exps[i] == 0) continue;
    Monomial m = mono;
    int e = m.exps[i]--;
    out[std::move(m)] += coeff * e;
  }
  if (out.empty()) return std::nullopt;
  return Form::from_terms(f.num_vars(), std::move(out));
}

std::optional<Form> directional_derivative(const Form& f,
                                           const std::vector<Int>& c) {
  if (static_cast<int>(c.size()) != f.num_vars())
    throw DimensionMismatchError("direction has wrong arity");
  bool nonzero = false;
  for (const Int& v : c) nonzero = nonzero || v != 0;
  if (!nonzero) throw PreconditionError("direction must be nonzero");
  Form::TermMap out;
  for (const auto& [mono, coeff] : f.terms()) {
    for (int i = 0; i < f.num_vars(); ++i) {
      if (mono.exps[i] == 0 || c[i] == 0) continue;
      Monomial m = mono;
      int e = m.exps[i]--;
      Int& slot = out[std::move(m)];
      slot += coeff * e * c[i];
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  if (out.empty()) return std::nullopt;
  return Form::from_terms(f.num_vars(), std::move(out));
}

std::optional<Form> directional_derivative(const Form& f, const IntVec& c) {
  std::vector<Int> v(c.data(), c.data() + c.size());
  return directional_derivative(f, v);
}

namespace {

using TermMap = Form::TermMap;

TermMap multiply_maps(const TermMap& a, const TermMap& b, int num_vars) {
  TermMap out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m;
      m.exps.resize(num_vars);
      for (int i = 0; i < num_vars; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
      out[std::move(m)] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace

Form apply_substitution(const Form& f, const IntMat& a) {
  const int nv = f.num_vars();
  if (a.rows() != nv || a.cols() != nv)
    throw DimensionMismatchError("substitution matrix must be " +
                                 std::to_string(nv) + "x" + std::to_string(nv));
  // Linear images of the variables, as term maps.
  std::vector<TermMap> images(nv);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (a(i, j) == 0) continue;
      Monomial m;
      m.exps.assign(nv, 0);
      m.exps[j] = 1;
      images[i][std::move(m)] = a(i, j);
    }
  }
  TermMap acc;
  Monomial unit;
  unit.exps.assign(nv, 0);
  for (const auto& [mono, coeff] : f.terms()) {
    TermMap prod{{unit, coeff}};
    for (int i = 0; i < nv; ++i) {
      for (int e = 0; e < mono.exps[i]; ++e) {
        if (images[i].empty()) {
          prod.clear();
          break;
        }
        prod = multiply_maps(prod, images[i], nv);
      }
      if (prod.empty()) break;
    }
    for (auto& [m, c] : prod) acc[m] += c;
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second == 0) it = acc.erase(it);
    else ++it;
  }
  if (acc.empty()) throw ZeroFormError();
  return Form::from_terms(nv, std::move(acc));
}

Form add(const Form& a, const Form& b) {
  if (a.num_vars() != b.num_vars())
    throw DimensionMismatchError("cannot add forms with different arity");
  TermMap out = a.terms();
  for (const auto& [m, c] : b.terms()) out[m] += c;
  return Form::from_terms(a.num_vars(), std::move(out));
}

Form scale(const Form& f, const Int& c) {
  if (c == 0) throw ZeroFormError();
  TermMap out = f.terms();
  for (auto& [m, v] : out) v *= c;
  return Form::from_terms(f.num_vars(), std::move(out));
}

Form multiply(const Form& a, const Form& b) {
  if (a.num_vars() != b.num_vars())
    throw DimensionMismatchError("cannot multiply forms with different arity");
  return Form::from_terms(a.num_vars(),
                          multiply_maps(a.terms(), b.terms(), a.num_vars()));
}

Form multiply_by_variable(const Form& f, int i) {
  if (i < 0 || i >= f.num_vars()) throw PreconditionError("variable index out of range");
  TermMap out;
  for (const auto& [mono, coeff] : f.terms()) {
    Monomial m = mono;
    ++m.exps[i];
    out[std::move(m)] = coeff;
  }
  return Form::from_terms(f.num_vars(), std::move(out));
}

namespace {

Form family_form(int n, int d, bool cyclic_wrap, bool fermat) {
  if (n < 1) throw PreconditionError("family forms need dimension n >= 1");
  if (d < 2) throw PreconditionError("family forms need degree d >= 2");
  const int nv = n + 2;
  Form::TermMap terms;
  for (int i = 0; i < nv; ++i) {
    Monomial m;
    m.exps.assign(nv, 0);
    if (fermat) {
      m.exps[i] = d;
    } else if (i == nv - 1 && !cyclic_wrap) {
      m.exps[i] = d;  // Delsarte tail x_{n+1}^d
    } else {
      m.exps[i] = d - 1;
      m.exps[(i + 1) % nv] = 1;
    }
    terms[std::move(m)] = 1;
  }
  return Form::from_terms(nv, std::move(terms), /*known_smooth=*/true);
}

}  // namespace

Form fermat_form(int n, int d) { return family_form(n, d, false, true); }
Form delsarte_form(int n, int d) { return family_form(n, d, false, false); }
Form klein_form(int n, int d) { return family_form(n, d, true, false); }

}  // namespace hyperaut
