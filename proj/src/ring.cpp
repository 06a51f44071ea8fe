#include "clalg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "clalg/errors.hpp"

namespace clalg {

GradedRing::GradedRing(std::string name, std::uint32_t p, std::vector<std::string> vars, std::vector<int> weights,
                       std::vector<Poly> ideal, bool domain)
    : name_(std::move(name)), F_(p), vars_(std::move(vars)), weights_(std::move(weights)), domain_(domain) {
  if (!is_prime(p)) throw ConstructionError("modulus not prime: " + std::to_string(p));
  if (p >= (1u << 31)) throw ConstructionError("modulus must fit in 31 bits");
  if (vars_.size() > kMaxVars / 2)
    throw ConstructionError("at most " + std::to_string(kMaxVars / 2) + " variables are supported");
  if (weights_.empty()) weights_.assign(vars_.size(), 1);
  if (weights_.size() != vars_.size()) throw ConstructionError("one weight per variable required");
  if (std::any_of(weights_.begin(), weights_.end(), [](int w) { return w <= 0; }))
    throw ConstructionError("variable weights must be positive");
  for (auto& f : ideal) {
    if (f.rank_hint() > 1) throw ConstructionError("defining relations must be ring elements");
    if (!is_homogeneous(f, weights_, {})) throw ConstructionError("defining relation is not homogeneous");
    if (!f.is_zero()) ideal_.push_back(f);
  }
  perm_.resize(vars_.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  if (ideal_.empty()) return;

  std::vector<std::vector<std::size_t>> candidates;
  if (vars_.size() <= 5) {
    auto p = perm_;
    do candidates.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  } else {
    candidates.push_back(perm_);
    candidates.emplace_back(perm_.rbegin(), perm_.rend());
  }
  std::shared_ptr<GroebnerBasis> best;
  std::pair<std::size_t, std::size_t> best_score{SIZE_MAX, SIZE_MAX};
  for (const auto& cand : candidates) {
    auto gb = std::make_shared<GroebnerBasis>(groebner(ideal_, MonomialOrder::grevlex(weights_, {}, cand), F_));
    std::vector<bool> used(vars_.size(), false);
    for (std::size_t i = 0; i < gb->size(); ++i)
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (gb->lead(i).mono.e[v]) used[v] = true;
    std::pair<std::size_t, std::size_t> score{0, 0};
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (used[v]) {
        ++score.first;
        score.second += vars_.size() - 1 - v;
      }
    if (score < best_score) {
      best_score = score;
      best = gb;
      perm_ = cand;
    }
  }
  ideal_gb_ = best->elements();
  ideal_basis_ = std::move(best);
}

Vec GradedRing::reduce(const Vec& v) const {
  if (!ideal_basis_) return v;
  const auto rank = v.rank_hint();
  if (rank <= 1) return ideal_basis_->normal_form(v);
  auto parts = components(v, rank);
  for (auto& part : parts) part = ideal_basis_->normal_form(part);
  return from_components(parts);
}

Poly GradedRing::var(std::size_t i) const { return monomial_vec(Monomial::var(i), 1); }

Poly GradedRing::constant(std::int64_t c) const { return clalg::constant(F_.from_int(c)); }

Poly GradedRing::parse(std::string_view text) const { return parse_polynomial(text, vars_, F_); }

std::string GradedRing::format(const Poly& f) const { return format_polynomial(f, vars_, F_); }

MonomialOrder GradedRing::order(std::vector<std::int64_t> shifts) const {
  return MonomialOrder::grevlex(weights_, std::move(shifts), perm_);
}

std::int64_t GradedRing::degree(const Poly& f) const {
  if (f.is_zero()) return 0;
  if (!is_homogeneous(f, weights_, {})) throw ConstructionError("element is not homogeneous: " + format(f));
  return f.terms.front().mono.weighted_degree(weights_);
}

RingPtr make_ring(std::string name, std::uint32_t p, std::vector<std::string> vars,
                  std::vector<std::string> relations, std::vector<int> weights, bool domain) {
  if (!is_prime(p)) throw ConstructionError("modulus not prime: " + std::to_string(p));
  Zp F(p);
  std::vector<Poly> ideal;
  for (const auto& r : relations) ideal.push_back(parse_polynomial(r, vars, F));
  return std::make_shared<const GradedRing>(std::move(name), p, std::move(vars), std::move(weights),
                                            std::move(ideal), domain);
}

Vec RingMap::apply(const Vec& v) const { return target->reduce(substitute(v, images, target->field())); }

bool RingMap::is_variable_identity() const {
  if (source->nvars() != target->nvars()) return false;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!(images[i] == target->var(i))) return false;
  return true;
}

RingMap make_ring_map(RingPtr source, RingPtr target, std::vector<Poly> images) {
  if (source->characteristic() != target->characteristic())
    throw DimensionError("ring map between different characteristics");
  if (images.size() != source->nvars()) throw DimensionError("ring map needs one image per source variable");
  for (auto& img : images) img = target->reduce(img);
  RingMap m{std::move(source), std::move(target), std::move(images)};
  for (const auto& f : m.source->ideal())
    if (!m.apply(f).is_zero()) throw PreconditionError("ring map does not kill the source relations");
  return m;
}

RingMap frobenius_map(const RingPtr& ring, std::uint32_t e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= ring->characteristic();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ring->nvars(); ++i) images.push_back(frobenius(ring->var(i), q));
  return RingMap{ring, ring, std::move(images)};
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, const std::vector<std::string>& vars, const Zp& F) : s_(s), vars_(vars), F_(F) {}

  Poly parse() {
    Poly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip();
    Poly r;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    r = term();
    if (negate) r = neg(r, F_);
    for (;;) {
      if (eat('+')) r = add(r, term(), F_);
      else if (eat('-')) r = sub(r, term(), F_);
      else return r;
    }
  }

  Poly term() {
    Poly r = power();
    for (;;) {
      skip();
      if (eat('*')) {
        r = mul(r, power(), F_);
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        r = mul(r, power(), F_);  // implicit multiplication, e.g. 3x or 2(x+y)
      } else {
        return r;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const auto e = std::stoull(std::string(s_.substr(start, pos_ - start)));
      base = pow(base, e, F_);
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of polynomial");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return neg(power(), F_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string digits(s_.substr(start, pos_ - start));
      std::uint64_t v = 0;
      for (char d : digits) v = (v * 10 + static_cast<std::uint64_t>(d - '0')) % F_.modulus();
      return clalg::constant(static_cast<std::uint32_t>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return monomial_vec(Monomial::var(static_cast<std::size_t>(it - vars_.begin())), 1);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  const Zp& F_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(std::string_view text, const std::vector<std::string>& vars, const Zp& F) {
  return PolyParser(text, vars, F).parse();
}

std::string format_polynomial(const Poly& f, const std::vector<std::string>& vars, const Zp& F) {
  if (f.is_zero()) return "0";
  std::vector<Term> terms = f.terms;
  std::vector<int> w(vars.size(), 1);
  auto order = MonomialOrder::grevlex(w);
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return order.compare(a, b) > 0; });
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms) {
    std::int64_t c = F.to_signed(t.coef);
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool one = t.mono.is_one();
    if (c != 1 || one) out << c;
    bool need_star = c != 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (t.mono.e[i] == 0) continue;
      if (need_star) out << '*';
      out << vars[i];
      if (t.mono.e[i] > 1) out << '^' << t.mono.e[i];
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace clalg
