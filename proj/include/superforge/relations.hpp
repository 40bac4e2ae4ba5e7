#pragma once

#include <map>
#include <string>
#include <vector>

#include "superforge/dynkin.hpp"
#include "superforge/error.hpp"
#include "superforge/rational.hpp"

namespace superforge {

// Generator naming: "e0", "f0", "e1".."er", "f1".."fr", "h0".."hr" and in the
// extended alphabet "f00", "f02".."f0r" (f00 identifies with the old f0).

enum class AlphabetMode { borcherds, tha };

struct Alphabet {
  AlphabetMode mode = AlphabetMode::borcherds;
  int r = 0;
  std::vector<std::string> even_symbols;
  std::vector<std::string> odd_symbols;

  std::vector<std::string> all() const {
    std::vector<std::string> out = even_symbols;
    out.insert(out.end(), odd_symbols.begin(), odd_symbols.end());
    return out;
  }

  bool contains(const std::string& s) const {
    for (const auto& t : even_symbols)
      if (t == s) return true;
    for (const auto& t : odd_symbols)
      if (t == s) return true;
    return false;
  }

  static int parity_of(const std::string& s) {
    // odd generators: e0 and the level -1 family f0, f00, f02, ...
    if (s == "e0" || s == "f0" || (s.size() >= 3 && s[0] == 'f' && s[1] == '0')) return 1;
    return 0;
  }

  // consistent Z-grading: e0 at +1, f0/f0a at -1, the rest at 0
  static int level_of(const std::string& s) {
    if (s == "e0") return 1;
    if (s == "f0" || (s.size() >= 3 && s[0] == 'f' && s[1] == '0')) return -1;
    return 0;
  }

  // index set of the f_{0a} generators: {0, 2, 3, ..., r}
  std::vector<int> f0_indices() const {
    std::vector<int> out{0};
    for (int a = 2; a <= r; ++a) out.push_back(a);
    return out;
  }
};

inline std::string f0_name(int a) { return "f0" + std::to_string(a); }

inline Alphabet make_alphabet(AlphabetMode mode, int r) {
  Alphabet al;
  al.mode = mode;
  al.r = r;
  for (int i = 1; i <= r; ++i) al.even_symbols.push_back("e" + std::to_string(i));
  for (int i = 1; i <= r; ++i) al.even_symbols.push_back("f" + std::to_string(i));
  for (int a = 0; a <= r; ++a) al.even_symbols.push_back("h" + std::to_string(a));
  al.odd_symbols.push_back("e0");
  if (mode == AlphabetMode::borcherds) {
    al.odd_symbols.push_back("f0");
  } else {
    for (int a : al.f0_indices()) al.odd_symbols.push_back(f0_name(a));
  }
  return al;
}

// Formal bracket expression: a leaf generator symbol or [a, b].
struct Expr {
  std::string leaf;        // nonempty for leaves
  std::vector<Expr> kids;  // size 2 for brackets

  bool is_leaf() const { return kids.empty(); }

  static Expr sym(std::string s) {
    Expr e;
    e.leaf = std::move(s);
    return e;
  }
  static Expr br(Expr a, Expr b) {
    Expr e;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
  }

  int level() const {
    if (is_leaf()) return Alphabet::level_of(leaf);
    return kids[0].level() + kids[1].level();
  }
  int parity() const {
    if (is_leaf()) return Alphabet::parity_of(leaf);
    return (kids[0].parity() + kids[1].parity()) & 1;
  }
  std::string str() const {
    if (is_leaf()) return leaf;
    return "[" + kids[0].str() + "," + kids[1].str() + "]";
  }
};

// (ad a)^k (b)
inline Expr ad_power(const std::string& a, int k, const std::string& b) {
  Expr e = Expr::sym(b);
  for (int i = 0; i < k; ++i) e = Expr::br(Expr::sym(a), std::move(e));
  return e;
}

struct Term {
  Rat coeff;
  Expr expr;
};

enum class RelationFamily { chevalley_serre, extended, ideal_J };

inline const char* family_name(RelationFamily f) {
  switch (f) {
    case RelationFamily::chevalley_serre: return "chevalley-serre";
    case RelationFamily::extended: return "extended";
    case RelationFamily::ideal_J: return "ideal-J";
  }
  return "?";
}

struct Relation {
  std::string id;
  RelationFamily family;
  std::vector<Term> terms;  // relation states: sum of terms = 0

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      s += "(" + rat_to_string(terms[i].coeff) + ")*" + terms[i].expr.str();
    }
    s += " = 0";
    return s;
  }

  bool homogeneous() const {
    if (terms.empty()) return true;
    int lv = terms[0].expr.level(), pa = terms[0].expr.parity();
    for (const auto& t : terms)
      if (t.expr.level() != lv || t.expr.parity() != pa) return false;
    return true;
  }
};

struct RelationSet {
  Alphabet alphabet;
  std::vector<Relation> relations;
};

namespace detail {

inline void push_relation(RelationSet& rs, const std::string& id, RelationFamily fam,
                          std::vector<Term> terms) {
  Relation rel{id, fam, std::move(terms)};
  for (const auto& t : rel.terms) {
    // every symbol must be in the alphabet
    std::vector<const Expr*> stack{&t.expr};
    while (!stack.empty()) {
      const Expr* e = stack.back();
      stack.pop_back();
      if (e->is_leaf()) {
        if (!rs.alphabet.contains(e->leaf))
          throw error(errc::internal, "symbol '" + e->leaf + "' not in alphabet");
      } else {
        stack.push_back(&e->kids[0]);
        stack.push_back(&e->kids[1]);
      }
    }
  }
  if (!rel.homogeneous()) throw error(errc::internal, "inhomogeneous relation " + id);
  rs.relations.push_back(std::move(rel));
}

// The Chevalley-Serre family over a 0..r indexed alphabet; f0sym names the
// level -1 generator that plays the role of f_0.
inline void emit_chevalley_serre(RelationSet& rs, const CartanData& c,
                                 const std::string& f0sym) {
  int r = c.rank;
  auto ef = [&](char kind, int a) -> std::string {
    if (a == 0) return kind == 'e' ? "e0" : f0sym;
    return std::string(1, kind) + std::to_string(a);
  };
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= r; ++b) {
      Rat Bab(c.B[a][b]);
      std::string ha = "h" + std::to_string(a);
      push_relation(rs, "cartan-e:" + std::to_string(a) + "," + std::to_string(b),
                    RelationFamily::chevalley_serre,
                    {{Rat(1), Expr::br(Expr::sym(ha), Expr::sym(ef('e', b)))},
                     {-Bab, Expr::sym(ef('e', b))}});
      push_relation(rs, "cartan-f:" + std::to_string(a) + "," + std::to_string(b),
                    RelationFamily::chevalley_serre,
                    {{Rat(1), Expr::br(Expr::sym(ha), Expr::sym(ef('f', b)))},
                     {Bab, Expr::sym(ef('f', b))}});
      std::vector<Term> pair_terms{{Rat(1), Expr::br(Expr::sym(ef('e', a)), Expr::sym(ef('f', b)))}};
      if (a == b) pair_terms.push_back({Rat(-1), Expr::sym("h" + std::to_string(b))});
      push_relation(rs, "pair:" + std::to_string(a) + "," + std::to_string(b),
                    RelationFamily::chevalley_serre, std::move(pair_terms));
    }
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= r; ++b) {
      if (a == b) continue;
      int exp = 1 - c.B[a][b];
      push_relation(rs, "serre-e:" + std::to_string(a) + "," + std::to_string(b),
                    RelationFamily::chevalley_serre,
                    {{Rat(1), ad_power(ef('e', a), exp, ef('e', b))}});
      push_relation(rs, "serre-f:" + std::to_string(a) + "," + std::to_string(b),
                    RelationFamily::chevalley_serre,
                    {{Rat(1), ad_power(ef('f', a), exp, ef('f', b))}});
    }
  // diagonal odd case: exponent 1 - B_00 = 1 gives [e0,e0] = [f0,f0] = 0;
  // for even a = b the expression is trivial and is omitted
  push_relation(rs, "serre-e:0,0", RelationFamily::chevalley_serre,
                {{Rat(1), Expr::br(Expr::sym("e0"), Expr::sym("e0"))}});
  push_relation(rs, "serre-f:0,0", RelationFamily::chevalley_serre,
                {{Rat(1), Expr::br(Expr::sym(f0sym), Expr::sym(f0sym))}});
}

}  // namespace detail

// Relations of the Borcherds superalgebra B(g): generators M, Chevalley-Serre
// relations for the extended matrix B_ab.
inline RelationSet relations_borcherds(const CartanData& c) {
  RelationSet rs;
  rs.alphabet = make_alphabet(AlphabetMode::borcherds, c.rank);
  detail::emit_chevalley_serre(rs, c, "f0");
  return rs;
}

// Relations of W~(g) over the extended alphabet M': the Chevalley-Serre
// family (with f_0 read as f_{00}), the additional relations, and the
// ideal-J family from the theorem.
inline RelationSet relations_tha(const CartanData& c) {
  RelationSet rs;
  int r = c.rank;
  rs.alphabet = make_alphabet(AlphabetMode::tha, r);
  detail::emit_chevalley_serre(rs, c, f0_name(0));
  auto f0idx = rs.alphabet.f0_indices();
  // [e0, f0a] = h_a
  for (int a : f0idx)
    detail::push_relation(rs, "ext-e0:" + std::to_string(a), RelationFamily::extended,
                          {{Rat(1), Expr::br(Expr::sym("e0"), Expr::sym(f0_name(a)))},
                           {Rat(-1), Expr::sym("h" + std::to_string(a))}});
  // [h_a, f0b] = -B_{a0} f0b for all a = 0..r
  for (int a = 0; a <= r; ++a)
    for (int b : f0idx)
      detail::push_relation(
          rs, "ext-h:" + std::to_string(a) + "," + std::to_string(b), RelationFamily::extended,
          {{Rat(1), Expr::br(Expr::sym("h" + std::to_string(a)), Expr::sym(f0_name(b)))},
           {Rat(c.B[a][0]), Expr::sym(f0_name(b))}});
  // [e1, f0a] = 0
  for (int a : f0idx)
    detail::push_relation(rs, "ext-e1:" + std::to_string(a), RelationFamily::extended,
                          {{Rat(1), Expr::br(Expr::sym("e1"), Expr::sym(f0_name(a)))}});
  // [f_a, [f_a, f0b]] = 0 for a = 1..r
  for (int a = 1; a <= r; ++a)
    for (int b : f0idx)
      detail::push_relation(rs, "ext-ff:" + std::to_string(a) + "," + std::to_string(b),
                            RelationFamily::extended,
                            {{Rat(1), ad_power("f" + std::to_string(a), 2, f0_name(b))}});
  // [e_i, [f_j, f0a]] = delta_ij B_{aj} f0j for i, j = 2..r
  for (int i = 2; i <= r; ++i)
    for (int j = 2; j <= r; ++j)
      for (int a : f0idx) {
        std::vector<Term> terms{
            {Rat(1), Expr::br(Expr::sym("e" + std::to_string(i)),
                              Expr::br(Expr::sym("f" + std::to_string(j)),
                                       Expr::sym(f0_name(a))))}};
        if (i == j) terms.push_back({Rat(-c.B[a][j]), Expr::sym(f0_name(j))});
        detail::push_relation(rs,
                              "ext-ef:" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(a),
                              RelationFamily::extended, std::move(terms));
      }
  // ideal-J generators: [f0a, f0b] = 0
  for (size_t s = 0; s < f0idx.size(); ++s)
    for (size_t t = s; t < f0idx.size(); ++t)
      detail::push_relation(
          rs, "J-ff:" + std::to_string(f0idx[s]) + "," + std::to_string(f0idx[t]),
          RelationFamily::ideal_J,
          {{Rat(1), Expr::br(Expr::sym(f0_name(f0idx[s])), Expr::sym(f0_name(f0idx[t])))}});
  // [f0i, [f0j, f1]] = 0 and [(f02 - f00), [f0j, f1]] = 0 for i, j = 3..r
  for (int i = 3; i <= r; ++i)
    for (int j = 3; j <= r; ++j)
      detail::push_relation(rs, "J-nested:" + std::to_string(i) + "," + std::to_string(j),
                            RelationFamily::ideal_J,
                            {{Rat(1), Expr::br(Expr::sym(f0_name(i)),
                                               Expr::br(Expr::sym(f0_name(j)), Expr::sym("f1")))}});
  for (int j = 3; j <= r; ++j)
    detail::push_relation(
        rs, "J-diff:" + std::to_string(j), RelationFamily::ideal_J,
        {{Rat(1), Expr::br(Expr::sym(f0_name(2)),
                           Expr::br(Expr::sym(f0_name(j)), Expr::sym("f1")))},
         {Rat(-1), Expr::br(Expr::sym(f0_name(0)),
                            Expr::br(Expr::sym(f0_name(j)), Expr::sym("f1")))}});
  return rs;
}

}  // namespace superforge
