#include "apx/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "apx/element_set.hpp"

namespace apx {

// ---------------------------------------------------------------------------
// Element

int Element::cmp(const Element& o) const {
  if (v_.index() != o.v_.index())
    return v_.index() < o.v_.index() ? -1 : 1;
  switch (v_.index()) {
    case 0: {
      auto a = std::get<std::uint64_t>(v_), b = std::get<std::uint64_t>(o.v_);
      return a == b ? 0 : (a < b ? -1 : 1);
    }
    case 1:
      return ::cmp(std::get<mpz_class>(v_), std::get<mpz_class>(o.v_));
    case 2: {
      const Quad& a = std::get<Quad>(v_);
      const Quad& b = std::get<Quad>(o.v_);
      int c = ::cmp(a.a, b.a);
      if (c != 0) return c;
      return ::cmp(a.b, b.b);
    }
    default: {
      const List& a = std::get<List>(v_);
      const List& b = std::get<List>(o.v_);
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].cmp(b[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
}

static std::size_t hash_mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

static std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 3;
  std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i)
    h = hash_mix(h, mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

std::size_t Element::hash() const {
  std::size_t h = v_.index() * 0x100000001b3ULL;
  switch (v_.index()) {
    case 0:
      return hash_mix(h, std::get<std::uint64_t>(v_));
    case 1:
      return hash_mix(h, hash_mpz(std::get<mpz_class>(v_)));
    case 2: {
      const Quad& q = std::get<Quad>(v_);
      return hash_mix(hash_mix(h, hash_mpz(q.a)), hash_mpz(q.b));
    }
    default: {
      for (const Element& e : std::get<List>(v_)) h = hash_mix(h, e.hash());
      return h;
    }
  }
}

// ---------------------------------------------------------------------------
// Ring base

std::uint64_t Ring::size() const {
  throw DomainError("ring is not finite: universe enumeration refused");
}
Element Ring::element_at(std::uint64_t) const {
  throw DomainError("ring is not finite: universe enumeration refused");
}
std::uint64_t Ring::index_of(const Element&) const {
  throw DomainError("ring is not finite: universe enumeration refused");
}

std::optional<mpz_class> Ring::additive_order(const Element& a) const {
  // Generic finite fallback: scan multiples.
  check_member(a, "additive_order");
  Element acc = a;
  mpz_class k = 1;
  Element z = zero();
  while (!(acc == z)) {
    acc = add(acc, a);
    ++k;
  }
  return k;
}

void Ring::check_member(const Element& e, const char* who) const {
  if (e.ring() != this || !contains(e))
    throw DomainError(std::string(who) + ": element does not belong to ring " +
                      describe());
}

// ---------------------------------------------------------------------------
// Z/n

namespace {

class ZmodRing final : public Ring {
 public:
  explicit ZmodRing(std::uint64_t n) : Ring(Kind::Zmod), n_(n) {
    if (n == 0) throw SpecError("zmod: n must be >= 1");
  }

  std::string describe() const override {
    return "{\"kind\":\"zmod\",\"n\":" + std::to_string(n_) + "}";
  }
  bool is_finite() const override { return true; }
  std::uint64_t size() const override { return n_; }
  Element element_at(std::uint64_t i) const override {
    return Element(this, i);
  }
  std::uint64_t index_of(const Element& e) const override { return e.small(); }

  Element zero() const override { return Element(this, std::uint64_t{0}); }
  Element add(const Element& a, const Element& b) const override {
    std::uint64_t s = a.small() + b.small();
    if (s >= n_ || s < a.small()) s -= n_;
    return Element(this, s);
  }
  Element neg(const Element& a) const override {
    return Element(this, a.small() == 0 ? 0 : n_ - a.small());
  }
  Element mul(const Element& a, const Element& b) const override {
    unsigned __int128 p =
        static_cast<unsigned __int128>(a.small()) * b.small();
    return Element(this, static_cast<std::uint64_t>(p % n_));
  }
  bool contains(const Element& e) const override {
    return std::holds_alternative<std::uint64_t>(e.payload()) &&
           e.small() < n_;
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    std::uint64_t g = std::gcd(a.small(), n_);
    return mpz_class(static_cast<unsigned long>(n_ / g));
  }
  std::string encode(const Element& e) const override {
    return std::to_string(e.small());
  }
  Element parse(const std::string& text) const override {
    mpz_class z(text);
    mpz_class m = z % static_cast<unsigned long>(n_);
    if (m < 0) m += static_cast<unsigned long>(n_);
    return Element(this, static_cast<std::uint64_t>(m.get_ui()));
  }

  std::uint64_t n() const { return n_; }

 private:
  std::uint64_t n_;
};

// ---------------------------------------------------------------------------
// Integers

class IntegerRing final : public Ring {
 public:
  IntegerRing() : Ring(Kind::Integers) {}
  std::string describe() const override { return "{\"kind\":\"integers\"}"; }
  bool is_finite() const override { return false; }
  Element zero() const override { return Element(this, mpz_class(0)); }
  Element add(const Element& a, const Element& b) const override {
    return Element(this, mpz_class(a.integer() + b.integer()));
  }
  Element neg(const Element& a) const override {
    return Element(this, mpz_class(-a.integer()));
  }
  Element mul(const Element& a, const Element& b) const override {
    return Element(this, mpz_class(a.integer() * b.integer()));
  }
  bool contains(const Element& e) const override {
    return std::holds_alternative<mpz_class>(e.payload());
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    if (a.integer() == 0) return mpz_class(1);
    return std::nullopt;
  }
  std::string encode(const Element& e) const override {
    return e.integer().get_str();
  }
  Element parse(const std::string& text) const override {
    return Element(this, mpz_class(text));
  }
};

// ---------------------------------------------------------------------------
// O_K for K = Q(sqrt(d)), integral basis {1, omega}.
// omega = sqrt(d) unless d = 1 mod 4, in which case omega = (1+sqrt(d))/2,
// so omega^2 = q + p*omega with (q,p) = (d,0) resp. ((d-1)/4, 1).

bool is_squarefree(unsigned long d) {
  for (unsigned long f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) return false;
  return true;
}

class QuadRing final : public Ring {
 public:
  explicit QuadRing(unsigned long d) : Ring(Kind::Quadfield), d_(d) {
    if (d < 2 || !is_squarefree(d))
      throw SpecError("quadfield: d must be a squarefree integer >= 2");
    half_ = (d % 4 == 1);
    if (half_) {
      omega_sq_q_ = mpz_class((d - 1) / 4);
      omega_sq_p_ = 1;
    } else {
      omega_sq_q_ = mpz_class(d);
      omega_sq_p_ = 0;
    }
  }

  std::string describe() const override {
    return "{\"kind\":\"quadfield\",\"d\":" + std::to_string(d_) + "}";
  }
  bool is_finite() const override { return false; }
  Element zero() const override {
    return Element(this, Element::Quad{0, 0});
  }
  Element add(const Element& a, const Element& b) const override {
    return Element(this, Element::Quad{a.quad().a + b.quad().a,
                                       a.quad().b + b.quad().b});
  }
  Element neg(const Element& a) const override {
    return Element(this, Element::Quad{-a.quad().a, -a.quad().b});
  }
  Element mul(const Element& x, const Element& y) const override {
    const auto& u = x.quad();
    const auto& v = y.quad();
    // (a + b w)(c + e w) = ac + be w^2 + (ae + bc) w
    mpz_class be = u.b * v.b;
    return Element(this, Element::Quad{u.a * v.a + be * omega_sq_q_,
                                       u.a * v.b + u.b * v.a +
                                           be * omega_sq_p_});
  }
  bool contains(const Element& e) const override {
    return std::holds_alternative<Element::Quad>(e.payload());
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    if (a.quad().a == 0 && a.quad().b == 0) return mpz_class(1);
    return std::nullopt;
  }
  std::string encode(const Element& e) const override {
    return e.quad().a.get_str() + "+" + e.quad().b.get_str() + "*w";
  }
  Element parse(const std::string& text) const override;

  unsigned long d() const { return d_; }
  bool half() const { return half_; }

 private:
  unsigned long d_;
  bool half_;
  mpz_class omega_sq_q_, omega_sq_p_;
};

Element QuadRing::parse(const std::string& text) const {
  // Accepts "a", "b*w", "a+b*w", "a-b*w" with integer a, b.
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  auto wpos = s.find("*w");
  if (wpos == std::string::npos) {
    if (s.find('w') != std::string::npos)
      throw SpecError("quadfield parse: expected 'b*w' term in '" + text + "'");
    return Element(this, Element::Quad{mpz_class(s), 0});
  }
  if (wpos + 2 != s.size())
    throw SpecError("quadfield parse: trailing text in '" + text + "'");
  // Split the b-coefficient from an optional leading a-term: scan back from
  // wpos to the '+'/'-' that separates the two terms (not a leading sign).
  std::size_t split = std::string::npos;
  for (std::size_t i = wpos; i > 0; --i) {
    char c = s[i - 1];
    if ((c == '+' || c == '-') && i - 1 > 0) {
      char prev = s[i - 2];
      if (isdigit(static_cast<unsigned char>(prev))) {
        split = i - 1;
        break;
      }
    }
  }
  std::string a_str = "0", b_str;
  if (split == std::string::npos) {
    b_str = s.substr(0, wpos);
  } else {
    a_str = s.substr(0, split);
    b_str = s.substr(split, wpos - split);
    if (b_str == "+")
      b_str = "1";
    else if (b_str == "-")
      b_str = "-1";
  }
  if (b_str == "+" || b_str.empty()) b_str = "1";
  if (b_str == "-") b_str = "-1";
  if (!b_str.empty() && b_str[0] == '+') b_str = b_str.substr(1);
  if (!a_str.empty() && a_str[0] == '+') a_str = a_str.substr(1);
  return Element(this, Element::Quad{mpz_class(a_str), mpz_class(b_str)});
}

// ---------------------------------------------------------------------------
// Matrices over a base ring

class MatrixRing final : public Ring {
 public:
  MatrixRing(RingPtr base, unsigned dim)
      : Ring(Kind::Matrix), base_(std::move(base)), dim_(dim) {
    if (dim_ == 0) throw SpecError("matrix: dim must be >= 1");
  }

  std::string describe() const override {
    return "{\"kind\":\"matrix\",\"base\":" + base_->describe() +
           ",\"dim\":" + std::to_string(dim_) + "}";
  }
  bool is_finite() const override { return base_->is_finite(); }
  std::uint64_t size() const override {
    std::uint64_t b = base_->size();
    std::uint64_t s = 1;
    for (unsigned i = 0; i < dim_ * dim_; ++i) {
      unsigned __int128 p = static_cast<unsigned __int128>(s) * b;
      if (p > UINT64_MAX) throw DomainError("matrix ring size overflows");
      s = static_cast<std::uint64_t>(p);
    }
    return s;
  }
  Element element_at(std::uint64_t idx) const override {
    std::uint64_t b = base_->size();
    Element::List m(dim_ * dim_);
    for (unsigned i = 0; i < dim_ * dim_; ++i) {
      m[i] = base_->element_at(idx % b);
      idx /= b;
    }
    return Element(this, std::move(m));
  }
  std::uint64_t index_of(const Element& e) const override {
    std::uint64_t b = base_->size();
    std::uint64_t idx = 0;
    const auto& m = e.list();
    for (unsigned i = dim_ * dim_; i-- > 0;)
      idx = idx * b + base_->index_of(m[i]);
    return idx;
  }

  Element zero() const override {
    Element::List m(dim_ * dim_, base_->zero());
    return Element(this, std::move(m));
  }
  Element add(const Element& a, const Element& b) const override {
    Element::List m(dim_ * dim_);
    for (unsigned i = 0; i < dim_ * dim_; ++i)
      m[i] = base_->add(a.list()[i], b.list()[i]);
    return Element(this, std::move(m));
  }
  Element neg(const Element& a) const override {
    Element::List m(dim_ * dim_);
    for (unsigned i = 0; i < dim_ * dim_; ++i) m[i] = base_->neg(a.list()[i]);
    return Element(this, std::move(m));
  }
  Element mul(const Element& a, const Element& b) const override {
    Element::List m(dim_ * dim_, base_->zero());
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned k = 0; k < dim_; ++k) {
        const Element& aik = a.list()[i * dim_ + k];
        for (unsigned j = 0; j < dim_; ++j)
          m[i * dim_ + j] = base_->add(
              m[i * dim_ + j], base_->mul(aik, b.list()[k * dim_ + j]));
      }
    return Element(this, std::move(m));
  }
  bool contains(const Element& e) const override {
    if (!std::holds_alternative<Element::List>(e.payload())) return false;
    const auto& m = e.list();
    if (m.size() != dim_ * dim_) return false;
    for (const Element& x : m)
      if (!base_->contains(x)) return false;
    return true;
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    mpz_class l = 1;
    for (const Element& x : a.list()) {
      auto o = base_->additive_order(x);
      if (!o) return std::nullopt;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), o->get_mpz_t());
      l = l / g * *o;
    }
    return l;
  }
  std::string encode(const Element& e) const override {
    std::string s = "[";
    for (unsigned i = 0; i < dim_; ++i) {
      s += (i ? ",[" : "[");
      for (unsigned j = 0; j < dim_; ++j) {
        if (j) s += ",";
        s += base_->encode(e.list()[i * dim_ + j]);
      }
      s += "]";
    }
    return s + "]";
  }
  Element parse(const std::string& text) const override;

  const RingPtr& base() const { return base_; }
  unsigned dim() const { return dim_; }

 private:
  RingPtr base_;
  unsigned dim_;
};

// Splits "a,b,c" at top-level commas (brackets/parens nest).
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') depth++;
    if (c == ']' || c == ')') depth--;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

Element MatrixRing::parse(const std::string& text) const {
  std::string s = strip(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw SpecError("matrix parse: expected [[...],...] in '" + text + "'");
  auto rows = split_top_level(s.substr(1, s.size() - 2));
  if (rows.size() != dim_)
    throw SpecError("matrix parse: expected " + std::to_string(dim_) +
                    " rows");
  Element::List m;
  for (auto& row : rows) {
    std::string r = strip(row);
    if (r.size() < 2 || r.front() != '[' || r.back() != ']')
      throw SpecError("matrix parse: bad row '" + row + "'");
    auto cells = split_top_level(r.substr(1, r.size() - 2));
    if (cells.size() != dim_)
      throw SpecError("matrix parse: expected " + std::to_string(dim_) +
                      " columns");
    for (auto& c : cells) m.push_back(base_->parse(strip(c)));
  }
  return Element(this, std::move(m));
}

// ---------------------------------------------------------------------------
// Finite products

class ProductRing final : public Ring {
 public:
  explicit ProductRing(std::vector<RingPtr> fs)
      : Ring(Kind::Product), fs_(std::move(fs)) {
    if (fs_.empty()) throw SpecError("product: needs >= 1 factor");
  }
  std::string describe() const override {
    std::string s = "{\"kind\":\"product\",\"factors\":[";
    for (std::size_t i = 0; i < fs_.size(); ++i)
      s += (i ? "," : "") + fs_[i]->describe();
    return s + "]}";
  }
  bool is_finite() const override {
    for (const auto& f : fs_)
      if (!f->is_finite()) return false;
    return true;
  }
  std::uint64_t size() const override {
    std::uint64_t s = 1;
    for (const auto& f : fs_) {
      unsigned __int128 p = static_cast<unsigned __int128>(s) * f->size();
      if (p > UINT64_MAX) throw DomainError("product ring size overflows");
      s = static_cast<std::uint64_t>(p);
    }
    return s;
  }
  Element element_at(std::uint64_t idx) const override {
    Element::List t(fs_.size());
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      std::uint64_t b = fs_[i]->size();
      t[i] = fs_[i]->element_at(idx % b);
      idx /= b;
    }
    return Element(this, std::move(t));
  }
  std::uint64_t index_of(const Element& e) const override {
    std::uint64_t idx = 0;
    for (std::size_t i = fs_.size(); i-- > 0;)
      idx = idx * fs_[i]->size() + fs_[i]->index_of(e.list()[i]);
    return idx;
  }
  Element zero() const override {
    Element::List t;
    for (const auto& f : fs_) t.push_back(f->zero());
    return Element(this, std::move(t));
  }
  Element add(const Element& a, const Element& b) const override {
    Element::List t(fs_.size());
    for (std::size_t i = 0; i < fs_.size(); ++i)
      t[i] = fs_[i]->add(a.list()[i], b.list()[i]);
    return Element(this, std::move(t));
  }
  Element neg(const Element& a) const override {
    Element::List t(fs_.size());
    for (std::size_t i = 0; i < fs_.size(); ++i)
      t[i] = fs_[i]->neg(a.list()[i]);
    return Element(this, std::move(t));
  }
  Element mul(const Element& a, const Element& b) const override {
    Element::List t(fs_.size());
    for (std::size_t i = 0; i < fs_.size(); ++i)
      t[i] = fs_[i]->mul(a.list()[i], b.list()[i]);
    return Element(this, std::move(t));
  }
  bool contains(const Element& e) const override {
    if (!std::holds_alternative<Element::List>(e.payload())) return false;
    if (e.list().size() != fs_.size()) return false;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (!fs_[i]->contains(e.list()[i])) return false;
    return true;
  }
  std::optional<mpz_class> additive_order(const Element& a) const override {
    mpz_class l = 1;
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      auto o = fs_[i]->additive_order(a.list()[i]);
      if (!o) return std::nullopt;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), o->get_mpz_t());
      l = l / g * *o;
    }
    return l;
  }
  std::string encode(const Element& e) const override {
    std::string s = "(";
    for (std::size_t i = 0; i < fs_.size(); ++i)
      s += (i ? "," : "") + fs_[i]->encode(e.list()[i]);
    return s + ")";
  }
  Element parse(const std::string& text) const override {
    std::string s = strip(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
      throw SpecError("product parse: expected (...) in '" + text + "'");
    auto parts = split_top_level(s.substr(1, s.size() - 2));
    if (parts.size() != fs_.size())
      throw SpecError("product parse: wrong arity");
    Element::List t;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      t.push_back(fs_[i]->parse(strip(parts[i])));
    return Element(this, std::move(t));
  }

 private:
  std::vector<RingPtr> fs_;
};

// ---------------------------------------------------------------------------
// Table-presented rings. Axioms checked exhaustively up to size 64, by
// deterministic sampling above that.

class TableRing final : public Ring {
 public:
  TableRing(std::vector<std::vector<std::uint64_t>> add,
            std::vector<std::vector<std::uint64_t>> mul)
      : Ring(Kind::Table), add_(std::move(add)), mul_(std::move(mul)) {
    n_ = add_.size();
    validate();
  }

  std::string describe() const override {
    return "{\"kind\":\"table\",\"n\":" + std::to_string(n_) + "}";
  }
  bool is_finite() const override { return true; }
  std::uint64_t size() const override { return n_; }
  Element element_at(std::uint64_t i) const override {
    return Element(this, i);
  }
  std::uint64_t index_of(const Element& e) const override { return e.small(); }
  Element zero() const override { return Element(this, zero_); }
  Element add(const Element& a, const Element& b) const override {
    return Element(this, add_[a.small()][b.small()]);
  }
  Element neg(const Element& a) const override {
    return Element(this, neg_[a.small()]);
  }
  Element mul(const Element& a, const Element& b) const override {
    return Element(this, mul_[a.small()][b.small()]);
  }
  bool contains(const Element& e) const override {
    return std::holds_alternative<std::uint64_t>(e.payload()) &&
           e.small() < n_;
  }
  std::string encode(const Element& e) const override {
    return std::to_string(e.small());
  }
  Element parse(const std::string& text) const override {
    std::uint64_t i = std::stoull(text);
    if (i >= n_) throw SpecError("table parse: index out of range");
    return Element(this, i);
  }

 private:
  void validate();
  void check_triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) const;

  std::vector<std::vector<std::uint64_t>> add_, mul_;
  std::vector<std::uint64_t> neg_;
  std::uint64_t n_ = 0;
  std::uint64_t zero_ = 0;
};

void TableRing::check_triple(std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) const {
  auto at = [&](const auto& t, std::uint64_t x, std::uint64_t y) {
    return t[x][y];
  };
  auto triple = [&](const char* law) {
    return SpecError(std::string("table axioms fail: ") + law + " at triple (" +
                     std::to_string(a) + "," + std::to_string(b) + "," +
                     std::to_string(c) + ")");
  };
  if (at(add_, at(add_, a, b), c) != at(add_, a, at(add_, b, c)))
    throw triple("add associativity");
  if (at(mul_, at(mul_, a, b), c) != at(mul_, a, at(mul_, b, c)))
    throw triple("mul associativity");
  if (at(mul_, a, at(add_, b, c)) != at(add_, at(mul_, a, b), at(mul_, a, c)))
    throw triple("left distributivity");
  if (at(mul_, at(add_, a, b), c) != at(add_, at(mul_, a, c), at(mul_, b, c)))
    throw triple("right distributivity");
}

void TableRing::validate() {
  if (n_ == 0) throw SpecError("table: empty");
  auto square = [&](const auto& t, const char* name) {
    if (t.size() != n_) throw SpecError(std::string("table: ") + name +
                                        " is not square");
    for (const auto& row : t) {
      if (row.size() != n_)
        throw SpecError(std::string("table: ") + name + " is not square");
      for (auto v : row)
        if (v >= n_)
          throw SpecError(std::string("table: ") + name +
                          " entry out of range");
    }
  };
  square(add_, "add-table");
  square(mul_, "mul-table");

  // Abelian group structure: commutativity, a zero, inverses.
  for (std::uint64_t a = 0; a < n_; ++a)
    for (std::uint64_t b = 0; b < n_; ++b)
      if (add_[a][b] != add_[b][a])
        throw SpecError("table axioms fail: add commutativity at pair (" +
                        std::to_string(a) + "," + std::to_string(b) + ")");
  bool found_zero = false;
  for (std::uint64_t z = 0; z < n_ && !found_zero; ++z) {
    bool ok = true;
    for (std::uint64_t a = 0; a < n_; ++a)
      if (add_[z][a] != a) {
        ok = false;
        break;
      }
    if (ok) {
      zero_ = z;
      found_zero = true;
    }
  }
  if (!found_zero) throw SpecError("table axioms fail: no additive zero");
  neg_.assign(n_, 0);
  for (std::uint64_t a = 0; a < n_; ++a) {
    bool ok = false;
    for (std::uint64_t b = 0; b < n_; ++b)
      if (add_[a][b] == zero_) {
        neg_[a] = b;
        ok = true;
        break;
      }
    if (!ok)
      throw SpecError("table axioms fail: no additive inverse for " +
                      std::to_string(a));
  }

  if (n_ <= 64) {
    for (std::uint64_t a = 0; a < n_; ++a)
      for (std::uint64_t b = 0; b < n_; ++b)
        for (std::uint64_t c = 0; c < n_; ++c) check_triple(a, b, c);
  } else {
    SplitMix64 g(0x7ab1e5);
    for (int i = 0; i < 4096; ++i)
      check_triple(g.below(n_), g.below(n_), g.below(n_));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Quotient ring of a full finite base ring by a verified two-sided ideal.

namespace {

class QuotientRing final : public Ring {
 public:
  QuotientRing(RingPtr base, std::vector<Element> ideal);

  std::string describe() const override {
    std::string s = "{\"kind\":\"quotient\",\"base\":" + base_->describe() +
                    ",\"ideal\":[";
    for (std::size_t i = 0; i < ideal_.size(); ++i)
      s += (i ? ",\"" : "\"") + base_->encode(ideal_[i]) + "\"";
    return s + "]}";
  }
  bool is_finite() const override { return true; }
  std::uint64_t size() const override { return reps_.size(); }
  Element element_at(std::uint64_t i) const override {
    return Element(this, reps_[i].payload());
  }
  std::uint64_t index_of(const Element& e) const override {
    auto it = rep_index_.find(Element(base_.get(), e.payload()));
    if (it == rep_index_.end()) throw DomainError("quotient: not an element");
    return it->second;
  }
  Element zero() const override { return reduce(base_->zero()); }
  Element add(const Element& a, const Element& b) const override {
    return reduce(base_->add(lift(a), lift(b)));
  }
  Element neg(const Element& a) const override {
    return reduce(base_->neg(lift(a)));
  }
  Element mul(const Element& a, const Element& b) const override {
    return reduce(base_->mul(lift(a), lift(b)));
  }
  bool contains(const Element& e) const override {
    Element lifted(base_.get(), e.payload());
    if (!base_->contains(lifted)) return false;
    auto it = coset_rep_.find(lifted);
    return it != coset_rep_.end() && it->second == lifted;
  }
  std::string encode(const Element& e) const override {
    return base_->encode(lift(e));
  }
  Element parse(const std::string& text) const override {
    return reduce(base_->parse(text));
  }

  Element lift(const Element& e) const {
    return Element(base_.get(), e.payload());
  }
  Element reduce(const Element& base_elem) const {
    auto it = coset_rep_.find(base_elem);
    if (it == coset_rep_.end()) throw DomainError("quotient: reduce failed");
    return Element(this, it->second.payload());
  }

 private:
  RingPtr base_;
  std::vector<Element> ideal_;
  std::vector<Element> reps_;  // sorted canonical representatives
  std::unordered_map<Element, Element, ElementHash> coset_rep_;
  std::unordered_map<Element, std::uint64_t, ElementHash> rep_index_;
};

QuotientRing::QuotientRing(RingPtr base, std::vector<Element> ideal)
    : Ring(Kind::Quotient), base_(std::move(base)), ideal_(std::move(ideal)) {
  std::uint64_t n = base_->size();
  if (n > (1u << 20)) throw BudgetError("quotient: base ring too large");
  if (n % ideal_.size() != 0)
    throw SpecError("quotient: |ideal| does not divide |ring|");
  std::unordered_map<Element, std::uint64_t, ElementHash> seen;
  for (std::uint64_t i = 0; i < n; ++i) {
    Element e = base_->element_at(i);
    if (seen.count(e)) continue;
    // Coset e + I; canonical representative = structural minimum.
    std::vector<Element> coset;
    coset.reserve(ideal_.size());
    for (const Element& x : ideal_) coset.push_back(base_->add(e, x));
    Element rep = *std::min_element(coset.begin(), coset.end());
    for (const Element& c : coset) {
      if (seen.count(c)) throw SpecError("quotient: ideal is not a subgroup");
      seen.emplace(c, 1);
      coset_rep_.emplace(c, rep);
    }
    reps_.push_back(rep);
  }
  std::sort(reps_.begin(), reps_.end());
  for (std::uint64_t i = 0; i < reps_.size(); ++i)
    rep_index_.emplace(reps_[i], i);
}

}  // namespace

// ---------------------------------------------------------------------------
// Constructors and the JSON spec reader

RingPtr make_zmod(std::uint64_t n) { return std::make_shared<ZmodRing>(n); }
RingPtr make_integers() { return std::make_shared<IntegerRing>(); }
RingPtr make_quadfield(unsigned long d) {
  return std::make_shared<QuadRing>(d);
}
RingPtr make_matrix(RingPtr base, unsigned dim) {
  return std::make_shared<MatrixRing>(std::move(base), dim);
}
RingPtr make_product(std::vector<RingPtr> factors) {
  return std::make_shared<ProductRing>(std::move(factors));
}
RingPtr make_table(const std::vector<std::vector<std::uint64_t>>& add,
                   const std::vector<std::vector<std::uint64_t>>& mul) {
  return std::make_shared<TableRing>(add, mul);
}

RingPtr make_quotient(RingPtr base, const ElementSet& ideal) {
  if (!base->is_finite()) throw DomainError("quotient: base must be finite");
  // Two-sided ideal check with an explicit witness.
  std::vector<Element> I = ideal.to_vector();
  for (const Element& i : I)
    base->check_member(i, "quotient ideal");
  for (const Element& i : I) {
    for (const Element& j : I)
      if (!ideal.contains(base->add(i, j)))
        throw SpecError("quotient: ideal not closed under addition: " +
                        base->encode(i) + " + " + base->encode(j) + " = " +
                        base->encode(base->add(i, j)) + " not in ideal");
    if (!ideal.contains(base->neg(i)))
      throw SpecError("quotient: ideal not closed under negation: -" +
                      base->encode(i));
  }
  std::uint64_t n = base->size();
  for (std::uint64_t r = 0; r < n; ++r) {
    Element e = base->element_at(r);
    for (const Element& i : I) {
      if (!ideal.contains(base->mul(e, i)))
        throw SpecError("quotient: not a left ideal: " + base->encode(e) +
                        " * " + base->encode(i) + " escapes");
      if (!ideal.contains(base->mul(i, e)))
        throw SpecError("quotient: not a right ideal: " + base->encode(i) +
                        " * " + base->encode(e) + " escapes");
    }
  }
  return std::make_shared<QuotientRing>(base, std::move(I));
}

QuadBasis quad_basis(const Ring& ring) {
  if (ring.kind() != Ring::Kind::Quadfield)
    throw DomainError("quad_basis: not a quadfield ring");
  const auto& qr = static_cast<const QuadRing&>(ring);
  return QuadBasis{qr.d(), qr.half()};
}

namespace {

RingPtr ring_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw SpecError("ring spec: expected object with 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zmod") return make_zmod(j.at("n").get<std::uint64_t>());
  if (kind == "integers") return make_integers();
  if (kind == "quadfield")
    return make_quadfield(j.at("d").get<unsigned long>());
  if (kind == "matrix")
    return make_matrix(ring_from_json(j.at("base")),
                       j.at("dim").get<unsigned>());
  if (kind == "product") {
    std::vector<RingPtr> fs;
    for (const auto& f : j.at("factors")) fs.push_back(ring_from_json(f));
    return make_product(std::move(fs));
  }
  if (kind == "table") {
    auto add = j.at("add").get<std::vector<std::vector<std::uint64_t>>>();
    auto mul = j.at("mul").get<std::vector<std::vector<std::uint64_t>>>();
    return make_table(add, mul);
  }
  if (kind == "quotient") {
    RingPtr base = ring_from_json(j.at("base"));
    if (!base->is_finite())
      throw SpecError("quotient spec: base must be finite");
    ElementSet gens(base);
    for (const auto& g : j.at("ideal"))
      gens.insert(base->parse(g.get<std::string>()));
    // The listed elements are ideal generators; close them first.
    ElementSet ideal = ideal_closure_in_full_ring(base, gens);
    return make_quotient(base, ideal);
  }
  throw SpecError("ring spec: unknown kind '" + kind + "'");
}

}  // namespace

RingPtr make_ring(const std::string& spec_json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(spec_json);
  } catch (const std::exception& e) {
    throw SpecError(std::string("ring spec: bad JSON: ") + e.what());
  }
  return ring_from_json(j);
}

Element ring_arith(const Ring& ring, const std::string& op, const Element& a,
                   const Element* b) {
  ring.check_member(a, "arith");
  if (op == "neg") {
    if (b) throw DomainError("arith: neg takes one operand");
    return ring.neg(a);
  }
  if (!b) throw DomainError("arith: " + op + " takes two operands");
  ring.check_member(*b, "arith");
  if (op == "add") return ring.add(a, *b);
  if (op == "mul") return ring.mul(a, *b);
  throw DomainError("arith: unknown op '" + op + "'");
}

}  // namespace apx
