#include <cassert>
#include <cctype>

#include "mkit/identity.hpp"

namespace mkit {

RelExpr RelExpr::clone() const {
  RelExpr out;
  out.kind = kind;
  out.name = name;
  out.count = count;
  out.count_param = count_param;
  if (a) out.a = std::make_unique<RelExpr>(a->clone());
  if (b) out.b = std::make_unique<RelExpr>(b->clone());
  return out;
}

bool RelExpr::equals(const RelExpr& other) const {
  if (kind != other.kind || name != other.name || count != other.count ||
      count_param != other.count_param)
    return false;
  if (!!a != !!other.a || !!b != !!other.b) return false;
  if (a && !a->equals(*other.a)) return false;
  if (b && !b->equals(*other.b)) return false;
  return true;
}

bool IdentityAST::equals(const IdentityAST& other) const {
  return lhs.equals(other.lhs) && rhs.equals(other.rhs) &&
         quantifiers == other.quantifiers && params == other.params;
}

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::Congruence: return "congruence";
    case Sort::Tolerance: return "tolerance";
    case Sort::Representable: return "representable";
    case Sort::Relation: return "relation";
  }
  return "?";
}

namespace {

enum class Tok {
  Name, Int, Le, Semi, Colon, Comma, Amp, Plus, LParen, RParen,
  LBracket, RBracket, Eq, Comp, Conv, Forall, Param, End
};

struct Token {
  Tok kind;
  std::string text;
  int value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{Tok::End, "", 0, line_, col_};
    if (pos_ >= s_.size()) return;
    char c = s_[pos_];
    auto simple = [&](Tok k, const char* t) {
      tok_.kind = k;
      tok_.text = t;
      ++pos_;
      ++col_;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      tok_.text = s_.substr(start, pos_ - start);
      col_ += static_cast<int>(pos_ - start);
      if (tok_.text == "o") tok_.kind = Tok::Comp;
      else if (tok_.text == "conv") tok_.kind = Tok::Conv;
      else if (tok_.text == "forall") tok_.kind = Tok::Forall;
      else if (tok_.text == "param") tok_.kind = Tok::Param;
      else tok_.kind = Tok::Name;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      tok_.kind = Tok::Int;
      tok_.text = s_.substr(start, pos_ - start);
      try {
        tok_.value = std::stoi(tok_.text);
      } catch (...) {
        throw ParseError(line_, col_, "integer literal out of range");
      }
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    switch (c) {
      case '<':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
          tok_.kind = Tok::Le;
          tok_.text = "<=";
          pos_ += 2;
          col_ += 2;
          return;
        }
        throw ParseError(line_, col_, "expected '<='");
      case ';': simple(Tok::Semi, ";"); return;
      case ':': simple(Tok::Colon, ":"); return;
      case ',': simple(Tok::Comma, ","); return;
      case '&': simple(Tok::Amp, "&"); return;
      case '+': simple(Tok::Plus, "+"); return;
      case '(': simple(Tok::LParen, "("); return;
      case ')': simple(Tok::RParen, ")"); return;
      case '[': simple(Tok::LBracket, "["); return;
      case ']': simple(Tok::RBracket, "]"); return;
      case '=': simple(Tok::Eq, "="); return;
      default:
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  IdentityAST parse() {
    IdentityAST ast;
    ast.lhs = expr();
    expect(Tok::Le, "'<='");
    ast.rhs = expr();
    while (lex_.peek().kind == Tok::Semi) {
      lex_.take();
      Token t = lex_.take();
      if (t.kind == Tok::Forall) {
        std::vector<std::string> names;
        names.push_back(expect(Tok::Name, "variable name").text);
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          names.push_back(expect(Tok::Name, "variable name").text);
        }
        expect(Tok::Colon, "':'");
        Token st = expect(Tok::Name, "sort");
        Sort sort;
        if (st.text == "congruence") sort = Sort::Congruence;
        else if (st.text == "tolerance") sort = Sort::Tolerance;
        else if (st.text == "representable") sort = Sort::Representable;
        else if (st.text == "relation") sort = Sort::Relation;
        else throw ParseError(st.line, st.col, "unknown sort '" + st.text + "'");
        for (auto& nm : names) ast.quantifiers.push_back({nm, sort});
      } else if (t.kind == Tok::Param) {
        ParamDecl p;
        p.name = expect(Tok::Name, "parameter name").text;
        if (lex_.peek().kind == Tok::Eq) {
          lex_.take();
          p.value = expect(Tok::Int, "integer").value;
        }
        ast.params.push_back(std::move(p));
      } else {
        throw ParseError(t.line, t.col, "expected 'forall' or 'param'");
      }
    }
    Token end = lex_.peek();
    if (end.kind != Tok::End)
      throw ParseError(end.line, end.col, "trailing input '" + end.text + "'");
    return ast;
  }

 private:
  Token expect(Tok k, const char* what) {
    Token t = lex_.take();
    if (t.kind != k)
      throw ParseError(t.line, t.col,
                       std::string("expected ") + what + ", got '" +
                           (t.kind == Tok::End ? "<end>" : t.text) + "'");
    return t;
  }

  RelExpr expr() { return joinexpr(); }

  RelExpr joinexpr() {
    RelExpr cur = compexpr();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      RelExpr rhs = compexpr();
      RelExpr j;
      j.kind = RelExpr::Kind::Join;
      j.a = std::make_unique<RelExpr>(std::move(cur));
      j.b = std::make_unique<RelExpr>(std::move(rhs));
      cur = std::move(j);
    }
    return cur;
  }

  RelExpr compexpr() {
    RelExpr cur = meetexpr();
    while (lex_.peek().kind == Tok::Comp) {
      lex_.take();
      int count = -1;
      std::string count_param;
      bool is_compk = false;
      if (lex_.peek().kind == Tok::LBracket) {
        is_compk = true;
        lex_.take();
        Token t = lex_.take();
        if (t.kind == Tok::Int) {
          if (t.value < 1)
            throw ParseError(t.line, t.col, "composition count must be >= 1");
          count = t.value;
        } else if (t.kind == Tok::Name) {
          count_param = t.text;
        } else {
          throw ParseError(t.line, t.col, "expected count or parameter name");
        }
        expect(Tok::RBracket, "']'");
      }
      RelExpr rhs = meetexpr();
      RelExpr c;
      c.kind = is_compk ? RelExpr::Kind::CompK : RelExpr::Kind::Comp;
      c.count = count;
      c.count_param = count_param;
      c.a = std::make_unique<RelExpr>(std::move(cur));
      c.b = std::make_unique<RelExpr>(std::move(rhs));
      cur = std::move(c);
    }
    return cur;
  }

  RelExpr meetexpr() {
    RelExpr cur = atom();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      RelExpr rhs = atom();
      RelExpr m;
      m.kind = RelExpr::Kind::Meet;
      m.a = std::make_unique<RelExpr>(std::move(cur));
      m.b = std::make_unique<RelExpr>(std::move(rhs));
      cur = std::move(m);
    }
    return cur;
  }

  RelExpr atom() {
    Token t = lex_.take();
    if (t.kind == Tok::Name) {
      RelExpr v;
      v.kind = RelExpr::Kind::Var;
      v.name = t.text;
      var_pos_.try_emplace(t.text, std::make_pair(t.line, t.col));
      return v;
    }
    if (t.kind == Tok::Conv) {
      expect(Tok::LParen, "'('");
      RelExpr inner = expr();
      expect(Tok::RParen, "')'");
      RelExpr c;
      c.kind = RelExpr::Kind::Conv;
      c.a = std::make_unique<RelExpr>(std::move(inner));
      return c;
    }
    if (t.kind == Tok::LParen) {
      RelExpr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(t.line, t.col,
                     "expected a variable, 'conv(', or '(', got '" +
                         (t.kind == Tok::End ? "<end>" : t.text) + "'");
  }

 public:
  std::map<std::string, std::pair<int, int>> var_pos_;

 private:
  Lexer lex_;
};

void collect_vars(const RelExpr& e, std::set<std::string>& vars,
                  std::set<std::string>& count_params) {
  if (e.kind == RelExpr::Kind::Var) vars.insert(e.name);
  if (e.kind == RelExpr::Kind::CompK && !e.count_param.empty())
    count_params.insert(e.count_param);
  if (e.a) collect_vars(*e.a, vars, count_params);
  if (e.b) collect_vars(*e.b, vars, count_params);
}

int prec_of(const RelExpr& e) {
  switch (e.kind) {
    case RelExpr::Kind::Join: return 1;
    case RelExpr::Kind::Comp:
    case RelExpr::Kind::CompK: return 2;
    case RelExpr::Kind::Meet: return 3;
    default: return 4;
  }
}

void print_expr(const RelExpr& e, int parent_prec, std::string& out) {
  int p = prec_of(e);
  bool parens = p < parent_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case RelExpr::Kind::Var:
      out += e.name;
      break;
    case RelExpr::Kind::Conv:
      out += "conv(";
      print_expr(*e.a, 0, out);
      out += ')';
      break;
    case RelExpr::Kind::Meet:
      print_expr(*e.a, p, out);
      out += " & ";
      print_expr(*e.b, p + 1, out);
      break;
    case RelExpr::Kind::Join:
      print_expr(*e.a, p, out);
      out += " + ";
      print_expr(*e.b, p + 1, out);
      break;
    case RelExpr::Kind::Comp:
      print_expr(*e.a, p, out);
      out += " o ";
      print_expr(*e.b, p + 1, out);
      break;
    case RelExpr::Kind::CompK:
      print_expr(*e.a, p, out);
      out += " o[";
      out += e.count_param.empty() ? std::to_string(e.count) : e.count_param;
      out += "] ";
      print_expr(*e.b, p + 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

IdentityAST parse_identity(const std::string& text,
                           const std::set<std::string>& free_names) {
  Parser parser(text);
  IdentityAST ast = parser.parse();

  std::set<std::string> declared_params;
  for (const ParamDecl& p : ast.params)
    if (!declared_params.insert(p.name).second)
      throw ParseError(1, 1, "duplicate parameter '" + p.name + "'");

  std::set<std::string> quantified;
  for (const Quantifier& q : ast.quantifiers) {
    if (!quantified.insert(q.name).second)
      throw ParseError(1, 1, "variable '" + q.name + "' quantified twice");
    if (declared_params.count(q.name))
      throw ParseError(1, 1, "'" + q.name + "' is both a variable and a parameter");
  }

  std::set<std::string> vars, counts;
  collect_vars(ast.lhs, vars, counts);
  collect_vars(ast.rhs, vars, counts);
  for (const std::string& v : vars) {
    if (quantified.count(v) || free_names.count(v)) continue;
    auto pos = parser.var_pos_.at(v);
    throw ParseError(pos.first, pos.second, "unbound variable '" + v + "'");
  }
  for (const std::string& c : counts)
    if (!declared_params.count(c))
      throw ParseError(1, 1, "undeclared parameter '" + c + "' used as a count");
  return ast;
}

std::string pretty_print(const RelExpr& e) {
  std::string out;
  print_expr(e, 0, out);
  return out;
}

std::string pretty_print(const IdentityAST& ast) {
  std::string out = pretty_print(ast.lhs);
  out += " <= ";
  out += pretty_print(ast.rhs);
  for (size_t i = 0; i < ast.quantifiers.size();) {
    size_t j = i;
    while (j < ast.quantifiers.size() && ast.quantifiers[j].sort == ast.quantifiers[i].sort)
      ++j;
    out += " ; forall ";
    for (size_t t = i; t < j; ++t) {
      if (t > i) out += ",";
      out += ast.quantifiers[t].name;
    }
    out += ": " + sort_name(ast.quantifiers[i].sort);
    i = j;
  }
  for (const ParamDecl& p : ast.params) {
    out += " ; param " + p.name;
    if (p.value) out += "=" + std::to_string(*p.value);
  }
  return out;
}

}  // namespace mkit
