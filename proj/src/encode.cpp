#include "haltlab/encode.hpp"

#include <cstddef>

namespace haltlab {

// Tag-length-value serialization. Lengths and counts are unsigned LEB128;
// every construct has a one-byte tag. The format is self-delimiting, so a
// code is valid iff decoding consumes exactly the buffer.

namespace {

enum : std::uint8_t {
  TAG_DECL_PROC = 0x01,
  TAG_DECL_ENQ = 0x02,

  TAG_STMT_SKIP = 0x10,
  TAG_STMT_ASSIGN = 0x11,
  TAG_STMT_IF = 0x12,
  TAG_STMT_WHILE = 0x13,
  TAG_STMT_CALL = 0x14,
  TAG_STMT_RETURN = 0x15,
  TAG_STMT_ERROR = 0x16,

  TAG_EXPR_INT = 0x20,
  TAG_EXPR_BOOL = 0x21,
  TAG_EXPR_VAR = 0x22,
  TAG_EXPR_BINARY = 0x23,
  TAG_EXPR_NOT = 0x24,
  TAG_EXPR_ENQUIRY = 0x25,
  TAG_EXPR_CODE = 0x26,
};

class Writer {
public:
  void byte(std::uint8_t b) { out_.push_back(static_cast<char>(b)); }

  void uleb(std::uint64_t v) {
    do {
      std::uint8_t b = v & 0x7f;
      v >>= 7;
      if (v) b |= 0x80;
      byte(b);
    } while (v);
  }

  void str(const std::string& s) {
    uleb(s.size());
    out_.append(s);
  }

  std::string take() { return std::move(out_); }

private:
  std::string out_;
};

class Reader {
public:
  explicit Reader(const std::string& bytes) : data_(bytes) {}

  std::uint8_t byte() {
    if (pos_ >= data_.size()) throw DecodeError("truncated code");
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  std::uint64_t uleb() {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
      std::uint8_t b = byte();
      if (shift >= 63 && (b & 0x7e)) throw DecodeError("varint overflow");
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if (!(b & 0x80)) return v;
      shift += 7;
    }
  }

  std::string str() {
    std::uint64_t n = uleb();
    if (n > data_.size() - pos_) throw DecodeError("truncated code");
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == data_.size(); }

private:
  const std::string& data_;
  size_t pos_ = 0;
};

void write_expr(Writer& w, const Expr& e);

void write_body(Writer& w, const std::vector<Stmt>& body);

void write_stmt(Writer& w, const Stmt& s) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          w.byte(TAG_STMT_SKIP);
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          w.byte(TAG_STMT_ASSIGN);
          w.str(x.target);
          write_expr(w, *x.value);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          w.byte(TAG_STMT_IF);
          w.uleb(x.arms.size());
          for (const auto& arm : x.arms) {
            write_expr(w, *arm.guard);
            write_body(w, arm.body);
          }
          w.byte(x.else_body ? 1 : 0);
          if (x.else_body) write_body(w, *x.else_body);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          w.byte(TAG_STMT_WHILE);
          write_expr(w, *x.guard);
          write_body(w, x.body);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          w.byte(TAG_STMT_CALL);
          w.str(x.callee);
          w.uleb(x.args.size());
          for (const auto& a : x.args) write_expr(w, *a);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          w.byte(TAG_STMT_RETURN);
          write_expr(w, *x.value);
        } else {
          static_assert(std::is_same_v<T, ErrorStmt>);
          w.byte(TAG_STMT_ERROR);
          w.str(x.message);
        }
      },
      s.node);
}

void write_body(Writer& w, const std::vector<Stmt>& body) {
  w.uleb(body.size());
  for (const auto& s : body) write_stmt(w, s);
}

void write_expr(Writer& w, const Expr& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          w.byte(TAG_EXPR_INT);
          w.uleb(x.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          w.byte(TAG_EXPR_BOOL);
          w.byte(x.value ? 1 : 0);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          w.byte(TAG_EXPR_VAR);
          w.str(x.name);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          w.byte(TAG_EXPR_BINARY);
          w.byte(static_cast<std::uint8_t>(x.op));
          write_expr(w, *x.lhs);
          write_expr(w, *x.rhs);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          w.byte(TAG_EXPR_NOT);
          write_expr(w, *x.operand);
        } else if constexpr (std::is_same_v<T, EnquiryCall>) {
          w.byte(TAG_EXPR_ENQUIRY);
          w.str(x.callee);
          w.uleb(x.args.size());
          for (const auto& a : x.args) write_expr(w, *a);
        } else {
          static_assert(std::is_same_v<T, CodeLit>);
          w.byte(TAG_EXPR_CODE);
          w.str(x.decl_name);
        }
      },
      e.node);
}

Expr read_expr(Reader& r, int depth);
std::vector<Stmt> read_body(Reader& r, int depth);

constexpr int kMaxDepth = 512;

std::string read_name(Reader& r) {
  std::string s = r.str();
  if (s.empty()) throw DecodeError("empty name");
  return s;
}

Stmt read_stmt(Reader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("nesting too deep");
  std::uint8_t tag = r.byte();
  switch (tag) {
    case TAG_STMT_SKIP:
      return skip_stmt();
    case TAG_STMT_ASSIGN: {
      std::string target = read_name(r);
      return Stmt{AssignStmt{std::move(target), make_expr(read_expr(r, depth + 1))}, {}};
    }
    case TAG_STMT_IF: {
      IfStmt s;
      std::uint64_t arms = r.uleb();
      if (arms == 0) throw DecodeError("if without arms");
      for (std::uint64_t i = 0; i < arms; ++i) {
        IfStmt::Arm arm;
        arm.guard = make_expr(read_expr(r, depth + 1));
        arm.body = read_body(r, depth + 1);
        s.arms.push_back(std::move(arm));
      }
      std::uint8_t has_else = r.byte();
      if (has_else > 1) throw DecodeError("bad else flag");
      if (has_else) s.else_body = read_body(r, depth + 1);
      return Stmt{std::move(s), {}};
    }
    case TAG_STMT_WHILE: {
      ExprPtr g = make_expr(read_expr(r, depth + 1));
      return Stmt{WhileStmt{std::move(g), read_body(r, depth + 1)}, {}};
    }
    case TAG_STMT_CALL: {
      CallStmt s{read_name(r), {}};
      std::uint64_t n = r.uleb();
      for (std::uint64_t i = 0; i < n; ++i)
        s.args.push_back(make_expr(read_expr(r, depth + 1)));
      return Stmt{std::move(s), {}};
    }
    case TAG_STMT_RETURN:
      return Stmt{ReturnStmt{make_expr(read_expr(r, depth + 1))}, {}};
    case TAG_STMT_ERROR:
      return Stmt{ErrorStmt{r.str()}, {}};
    default:
      throw DecodeError("unknown statement tag");
  }
}

std::vector<Stmt> read_body(Reader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("nesting too deep");
  std::uint64_t n = r.uleb();
  std::vector<Stmt> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(read_stmt(r, depth + 1));
  return out;
}

Expr read_expr(Reader& r, int depth) {
  if (depth > kMaxDepth) throw DecodeError("nesting too deep");
  std::uint8_t tag = r.byte();
  switch (tag) {
    case TAG_EXPR_INT:
      return int_lit(r.uleb());
    case TAG_EXPR_BOOL: {
      std::uint8_t b = r.byte();
      if (b > 1) throw DecodeError("bad boolean");
      return bool_lit(b == 1);
    }
    case TAG_EXPR_VAR:
      return var_ref(read_name(r));
    case TAG_EXPR_BINARY: {
      std::uint8_t op = r.byte();
      if (op > static_cast<std::uint8_t>(BinOp::Or)) throw DecodeError("bad operator");
      Expr lhs = read_expr(r, depth + 1);
      Expr rhs = read_expr(r, depth + 1);
      return binary(static_cast<BinOp>(op), std::move(lhs), std::move(rhs));
    }
    case TAG_EXPR_NOT:
      return not_of(read_expr(r, depth + 1));
    case TAG_EXPR_ENQUIRY: {
      EnquiryCall c{read_name(r), {}};
      std::uint64_t n = r.uleb();
      for (std::uint64_t i = 0; i < n; ++i)
        c.args.push_back(make_expr(read_expr(r, depth + 1)));
      return Expr{std::move(c), {}};
    }
    case TAG_EXPR_CODE:
      return code_lit(read_name(r));
    default:
      throw DecodeError("unknown expression tag");
  }
}

}  // namespace

std::string ProgramCode::hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

ProgramCode encode(const Decl& d) {
  Writer w;
  w.byte(d.kind == DeclKind::Procedure ? TAG_DECL_PROC : TAG_DECL_ENQ);
  w.str(d.name);
  w.uleb(d.params.size());
  for (const auto& p : d.params) w.str(p);
  write_body(w, d.body);
  return ProgramCode{w.take()};
}

Decl decode(const ProgramCode& c) {
  Reader r(c.bytes);
  Decl d;
  std::uint8_t tag = r.byte();
  if (tag == TAG_DECL_PROC) d.kind = DeclKind::Procedure;
  else if (tag == TAG_DECL_ENQ) d.kind = DeclKind::Enquiry;
  else throw DecodeError("unknown declaration tag");
  d.name = read_name(r);
  std::uint64_t nparams = r.uleb();
  for (std::uint64_t i = 0; i < nparams; ++i) d.params.push_back(read_name(r));
  d.body = read_body(r, 0);
  if (!r.done()) throw DecodeError("trailing bytes after declaration");
  return d;
}

}  // namespace haltlab
