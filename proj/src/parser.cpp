#include "haltlab/parser.hpp"

#include <cctype>
#include <unordered_set>

#include "haltlab/check.hpp"

namespace haltlab {

namespace {

enum class Tok : std::uint8_t {
  Ident,
  Int,
  String,
  KwProcedure,
  KwEnquiry,
  KwSkip,
  KwIf,
  KwThen,
  KwElseif,
  KwElse,
  KwEnd,
  KwWhile,
  KwDo,
  KwReturn,
  KwError,
  KwCode,
  KwTrue,
  KwFalse,
  KwAnd,
  KwOr,
  KwNot,
  KwMod,
  Assign,   // :=
  Plus,
  Minus,
  Star,
  Eq,       // =
  Ne,       // <>
  Lt,
  Le,
  LParen,
  RParen,
  Comma,
  Semi,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t value = 0;
  SourceLoc loc;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::String: return "string";
    case Tok::KwProcedure: return "'procedure'";
    case Tok::KwEnquiry: return "'enquiry'";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElseif: return "'elseif'";
    case Tok::KwElse: return "'else'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwDo: return "'do'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwError: return "'error'";
    case Tok::KwCode: return "'code'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwAnd: return "'and'";
    case Tok::KwOr: return "'or'";
    case Tok::KwNot: return "'not'";
    case Tok::KwMod: return "'mod'";
    case Tok::Assign: return "':='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'<>'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

Tok keyword_kind(const std::string& word) {
  if (word == "procedure") return Tok::KwProcedure;
  if (word == "enquiry") return Tok::KwEnquiry;
  if (word == "skip") return Tok::KwSkip;
  if (word == "if") return Tok::KwIf;
  if (word == "then") return Tok::KwThen;
  if (word == "elseif") return Tok::KwElseif;
  if (word == "else") return Tok::KwElse;
  if (word == "end") return Tok::KwEnd;
  if (word == "while") return Tok::KwWhile;
  if (word == "do") return Tok::KwDo;
  if (word == "return") return Tok::KwReturn;
  if (word == "error") return Tok::KwError;
  if (word == "code") return Tok::KwCode;
  if (word == "true") return Tok::KwTrue;
  if (word == "false") return Tok::KwFalse;
  if (word == "and") return Tok::KwAnd;
  if (word == "or") return Tok::KwOr;
  if (word == "not") return Tok::KwNot;
  if (word == "mod") return Tok::KwMod;
  return Tok::Ident;
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      SourceLoc loc{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::Eof, "", 0, loc});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          word.push_back(take());
        out.push_back({keyword_kind(word), word, 0, loc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          std::uint64_t digit = static_cast<std::uint64_t>(take() - '0');
          if (v > (UINT64_MAX - digit) / 10)
            throw SyntaxError(loc, "integer literal too large");
          v = v * 10 + digit;
        }
        out.push_back({Tok::Int, "", v, loc});
        continue;
      }
      if (c == '"') {
        take();
        std::string s;
        for (;;) {
          if (pos_ >= src_.size()) throw SyntaxError(loc, "unterminated string literal");
          char d = take();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= src_.size()) throw SyntaxError(loc, "unterminated string literal");
            char e = take();
            if (e == '"') s.push_back('"');
            else if (e == '\\') s.push_back('\\');
            else if (e == 'n') s.push_back('\n');
            else throw SyntaxError({line_, col_}, "unknown escape in string literal");
          } else if (d == '\n') {
            throw SyntaxError(loc, "unterminated string literal");
          } else {
            s.push_back(d);
          }
        }
        out.push_back({Tok::String, s, 0, loc});
        continue;
      }
      switch (c) {
        case ':':
          take();
          if (pos_ < src_.size() && src_[pos_] == '=') {
            take();
            out.push_back({Tok::Assign, ":=", 0, loc});
            continue;
          }
          throw SyntaxError(loc, "expected '=' after ':'");
        case '+': take(); out.push_back({Tok::Plus, "+", 0, loc}); continue;
        case '-': take(); out.push_back({Tok::Minus, "-", 0, loc}); continue;
        case '*': take(); out.push_back({Tok::Star, "*", 0, loc}); continue;
        case '=': take(); out.push_back({Tok::Eq, "=", 0, loc}); continue;
        case '<':
          take();
          if (pos_ < src_.size() && src_[pos_] == '>') {
            take();
            out.push_back({Tok::Ne, "<>", 0, loc});
          } else if (pos_ < src_.size() && src_[pos_] == '=') {
            take();
            out.push_back({Tok::Le, "<=", 0, loc});
          } else {
            out.push_back({Tok::Lt, "<", 0, loc});
          }
          continue;
        case '(': take(); out.push_back({Tok::LParen, "(", 0, loc}); continue;
        case ')': take(); out.push_back({Tok::RParen, ")", 0, loc}); continue;
        case ',': take(); out.push_back({Tok::Comma, ",", 0, loc}); continue;
        case ';': take(); out.push_back({Tok::Semi, ";", 0, loc}); continue;
        default:
          throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
      }
    }
  }

private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
      // line comments: -- to end of line
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

constexpr int kMaxNesting = 256;

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ModuleAst module(std::string source_name) {
    ModuleAst m;
    m.source_name = std::move(source_name);
    while (!at(Tok::Eof)) {
      m.decls.push_back(decl());
    }
    if (!m.decls.empty()) m.entry = m.decls.front().name;
    return m;
  }

private:
  const Token& cur() const { return toks_[idx_]; }
  bool at(Tok t) const { return cur().kind == t; }

  Token expect(Tok t) {
    if (!at(t))
      throw SyntaxError(cur().loc,
                        std::string("unexpected ") + tok_name(cur().kind),
                        {tok_name(t)});
    return toks_[idx_++];
  }

  bool accept(Tok t) {
    if (at(t)) {
      ++idx_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw SyntaxError(cur().loc, std::string("unexpected ") + tok_name(cur().kind),
                      std::move(expected));
  }

  Decl decl() {
    Decl d;
    d.loc = cur().loc;
    if (accept(Tok::KwProcedure)) {
      d.kind = DeclKind::Procedure;
    } else if (accept(Tok::KwEnquiry)) {
      d.kind = DeclKind::Enquiry;
    } else {
      fail({tok_name(Tok::KwProcedure), tok_name(Tok::KwEnquiry)});
    }
    d.name = expect(Tok::Ident).text;
    if (accept(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        d.params.push_back(expect(Tok::Ident).text);
        while (accept(Tok::Comma)) d.params.push_back(expect(Tok::Ident).text);
      }
      expect(Tok::RParen);
    }
    d.body = stmt_list();
    expect(Tok::KwEnd);
    return d;
  }

  bool starts_stmt() const {
    switch (cur().kind) {
      case Tok::KwSkip:
      case Tok::KwIf:
      case Tok::KwWhile:
      case Tok::KwReturn:
      case Tok::KwError:
      case Tok::Ident:
        return true;
      default:
        return false;
    }
  }

  std::vector<Stmt> stmt_list() {
    std::vector<Stmt> out;
    for (;;) {
      while (accept(Tok::Semi)) {
      }
      if (!starts_stmt()) return out;
      out.push_back(stmt());
    }
  }

  Stmt stmt() {
    NestScope guard(*this);
    SourceLoc loc = cur().loc;
    if (accept(Tok::KwSkip)) return Stmt{SkipStmt{}, loc};
    if (accept(Tok::KwReturn)) {
      expect(Tok::LParen);
      Expr v = expr();
      expect(Tok::RParen);
      return Stmt{ReturnStmt{make_expr(std::move(v))}, loc};
    }
    if (accept(Tok::KwError)) {
      expect(Tok::LParen);
      Token s = expect(Tok::String);
      expect(Tok::RParen);
      return Stmt{ErrorStmt{s.text}, loc};
    }
    if (accept(Tok::KwIf)) {
      IfStmt node;
      node.arms.push_back(arm());
      while (accept(Tok::KwElseif)) node.arms.push_back(arm());
      if (accept(Tok::KwElse)) node.else_body = stmt_list();
      expect(Tok::KwEnd);
      return Stmt{std::move(node), loc};
    }
    if (accept(Tok::KwWhile)) {
      Expr g = expr();
      expect(Tok::KwDo);
      std::vector<Stmt> body = stmt_list();
      expect(Tok::KwEnd);
      return Stmt{WhileStmt{make_expr(std::move(g)), std::move(body)}, loc};
    }
    if (at(Tok::Ident)) {
      Token name = expect(Tok::Ident);
      if (accept(Tok::Assign)) {
        Expr v = expr();
        return Stmt{AssignStmt{name.text, make_expr(std::move(v))}, loc};
      }
      if (at(Tok::LParen)) {
        CallStmt c{name.text, arg_list()};
        return Stmt{std::move(c), loc};
      }
      fail({tok_name(Tok::Assign), tok_name(Tok::LParen)});
    }
    fail({"statement"});
  }

  IfStmt::Arm arm() {
    Expr g = expr();
    expect(Tok::KwThen);
    std::vector<Stmt> body = stmt_list();
    return {make_expr(std::move(g)), std::move(body)};
  }

  std::vector<ExprPtr> arg_list() {
    expect(Tok::LParen);
    std::vector<ExprPtr> args;
    if (!at(Tok::RParen)) {
      args.push_back(make_expr(expr()));
      while (accept(Tok::Comma)) args.push_back(make_expr(expr()));
    }
    expect(Tok::RParen);
    return args;
  }

  Expr expr() { return or_expr(); }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (at(Tok::KwOr)) {
      SourceLoc loc = cur().loc;
      ++idx_;
      Expr rhs = and_expr();
      Expr e{BinaryExpr{BinOp::Or, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, loc};
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (at(Tok::KwAnd)) {
      SourceLoc loc = cur().loc;
      ++idx_;
      Expr rhs = not_expr();
      Expr e{BinaryExpr{BinOp::And, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, loc};
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr not_expr() {
    NestScope guard(*this);
    if (at(Tok::KwNot)) {
      SourceLoc loc = cur().loc;
      ++idx_;
      Expr operand = not_expr();
      return Expr{NotExpr{make_expr(std::move(operand))}, loc};
    }
    return cmp_expr();
  }

  Expr cmp_expr() {
    Expr lhs = add_expr();
    BinOp op;
    switch (cur().kind) {
      case Tok::Eq: op = BinOp::Eq; break;
      case Tok::Ne: op = BinOp::Ne; break;
      case Tok::Lt: op = BinOp::Lt; break;
      case Tok::Le: op = BinOp::Le; break;
      default: return lhs;
    }
    SourceLoc loc = cur().loc;
    ++idx_;
    Expr rhs = add_expr();
    // comparisons do not chain; a = b = c needs parentheses
    return Expr{BinaryExpr{op, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, loc};
  }

  Expr add_expr() {
    Expr lhs = mul_expr();
    for (;;) {
      BinOp op;
      if (at(Tok::Plus)) op = BinOp::Add;
      else if (at(Tok::Minus)) op = BinOp::Sub;
      else return lhs;
      SourceLoc loc = cur().loc;
      ++idx_;
      Expr rhs = mul_expr();
      Expr e{BinaryExpr{op, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, loc};
      lhs = std::move(e);
    }
  }

  Expr mul_expr() {
    Expr lhs = primary();
    for (;;) {
      BinOp op;
      if (at(Tok::Star)) op = BinOp::Mul;
      else if (at(Tok::KwMod)) op = BinOp::Mod;
      else return lhs;
      SourceLoc loc = cur().loc;
      ++idx_;
      Expr rhs = primary();
      Expr e{BinaryExpr{op, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, loc};
      lhs = std::move(e);
    }
  }

  Expr primary() {
    NestScope guard(*this);
    SourceLoc loc = cur().loc;
    if (at(Tok::Int)) {
      std::uint64_t v = cur().value;
      ++idx_;
      return Expr{IntLit{v}, loc};
    }
    if (accept(Tok::KwTrue)) return Expr{BoolLit{true}, loc};
    if (accept(Tok::KwFalse)) return Expr{BoolLit{false}, loc};
    if (accept(Tok::KwCode)) {
      expect(Tok::LParen);
      Token name = expect(Tok::Ident);
      expect(Tok::RParen);
      return Expr{CodeLit{name.text}, loc};
    }
    if (accept(Tok::LParen)) {
      Expr e = expr();
      expect(Tok::RParen);
      return e;
    }
    if (at(Tok::Ident)) {
      Token name = expect(Tok::Ident);
      if (at(Tok::LParen)) {
        EnquiryCall c{name.text, arg_list()};
        return Expr{std::move(c), loc};
      }
      return Expr{VarRef{name.text}, loc};
    }
    fail({tok_name(Tok::Int), tok_name(Tok::KwTrue), tok_name(Tok::KwFalse),
          tok_name(Tok::KwCode), tok_name(Tok::LParen), tok_name(Tok::Ident)});
  }

  struct NestScope {
    explicit NestScope(Parser& p) : p_(p) {
      if (++p_.nesting_ > kMaxNesting)
        throw SyntaxError(p_.cur().loc, "nesting too deep");
    }
    ~NestScope() { --p_.nesting_; }
    Parser& p_;
  };

  std::vector<Token> toks_;
  size_t idx_ = 0;
  int nesting_ = 0;
};

}  // namespace

ModuleAst parse_module(std::string_view source, std::string source_name) {
  Lexer lex(source);
  Parser p(lex.run());
  return p.module(std::move(source_name));
}

ModuleAst parse(std::string_view source, std::string source_name) {
  ModuleAst m = parse_module(source, std::move(source_name));
  check(m);  // throws on name/kind violations
  return m;
}

}  // namespace haltlab
