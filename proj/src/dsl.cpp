#include "tdw/dsl.hpp"

#include <cctype>
#include <sstream>

#include "tdw/errors.hpp"

namespace tdw {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw InputError(std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + message);
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
      tok_.text = "<end of input>";
      return;
    }
    char ch = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        step();
      tok_ = {Token::Ident, text_.substr(start, pos_ - start), tok_.line, tok_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t start = pos_;
      if (ch == '-') step();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) step();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        step();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          step();
      }
      tok_ = {Token::Number, text_.substr(start, pos_ - start), tok_.line, tok_.col};
      return;
    }
    tok_ = {Token::Punct, std::string(1, ch), tok_.line, tok_.col};
    step();
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

struct Parser {
  Lexer lex;
  ComplexDocument doc;

  // raw declarations gathered before build_complex runs
  std::vector<VertexData> vertices;
  std::vector<EdgeData> edges;
  std::map<std::string, int> vertex_ids;
  std::map<std::string, int> edge_ids;
  bool complex_seen = false;

  explicit Parser(const std::string& text) : lex(text) {}

  Token expect_ident(const std::string& what) {
    Token t = lex.take();
    if (t.kind != Token::Ident) lex.fail(t, "expected " + what + ", found '" + t.text + "'");
    return t;
  }

  void expect_punct(const std::string& p) {
    Token t = lex.take();
    if (t.kind != Token::Punct || t.text != p)
      lex.fail(t, "expected '" + p + "', found '" + t.text + "'");
  }

  void expect_keyword(const std::string& kw) {
    Token t = lex.take();
    if (t.kind != Token::Ident || t.text != kw)
      lex.fail(t, "expected '" + kw + "', found '" + t.text + "'");
  }

  Rational expect_rational() {
    Token t = lex.take();
    if (t.kind != Token::Number) lex.fail(t, "expected a number, found '" + t.text + "'");
    try {
      return Rational::parse(t.text);
    } catch (const std::exception& ex) {
      lex.fail(t, ex.what());
    }
  }

  long long expect_integer() {
    Token t = lex.take();
    if (t.kind != Token::Number || t.text.find('/') != std::string::npos)
      lex.fail(t, "expected an integer, found '" + t.text + "'");
    return std::stoll(t.text);
  }

  void run() {
    while (lex.peek().kind != Token::End) {
      Token head = lex.take();
      if (head.kind != Token::Ident) lex.fail(head, "expected a declaration");
      if (head.text == "complex") {
        parse_complex(head);
      } else if (head.text == "divisor") {
        parse_divisor(head);
      } else if (head.text == "point") {
        parse_point(head);
      } else {
        lex.fail(head, "unknown declaration '" + head.text + "'");
      }
    }
    if (!complex_seen) throw InputError("document declares no complex");
  }

  void parse_complex(const Token& at) {
    if (complex_seen) lex.fail(at, "only one complex block is allowed");
    complex_seen = true;
    doc.name = expect_ident("a complex name").text;
    expect_punct("{");
    while (true) {
      Token t = lex.take();
      if (t.kind == Token::Punct && t.text == "}") break;
      if (t.kind != Token::Ident) lex.fail(t, "expected 'vertex', 'edge' or '}'");
      if (t.text == "vertex") {
        Token name = expect_ident("a vertex name");
        if (vertex_ids.count(name.text)) lex.fail(name, "duplicate vertex '" + name.text + "'");
        expect_keyword("genus");
        Token gt = lex.peek();
        long long g = expect_integer();
        if (g != 0 && g != 1)
          lex.fail(gt, "genus " + std::to_string(g) + " is out of range; components are genus 0 or 1");
        expect_punct(";");
        vertex_ids[name.text] = static_cast<int>(vertices.size());
        vertices.push_back({name.text, static_cast<int>(g)});
      } else if (t.text == "edge") {
        parse_edge();
      } else {
        lex.fail(t, "expected 'vertex' or 'edge'");
      }
    }
    try {
      doc.complex = build_complex(vertices, edges);
    } catch (const InputError& ex) {
      lex.fail(at, ex.what());
    }
  }

  void parse_edge() {
    Token name = expect_ident("an edge name");
    if (edge_ids.count(name.text)) lex.fail(name, "duplicate edge '" + name.text + "'");
    Token v1 = expect_ident("a vertex name");
    Token v2 = expect_ident("a vertex name");
    auto vid = [&](const Token& t) {
      auto it = vertex_ids.find(t.text);
      if (it == vertex_ids.end()) lex.fail(t, "undeclared vertex '" + t.text + "'");
      return it->second;
    };
    EdgeData e;
    e.name = name.text;
    e.a = vid(v1);
    e.b = vid(v2);
    expect_keyword("length");
    Token lt = lex.peek();
    e.length = expect_rational();
    if (!(e.length > Rational(0))) lex.fail(lt, "edge length must be positive");
    while (lex.peek().kind == Token::Ident && lex.peek().text == "node") {
      lex.take();
      Token nv = expect_ident("a vertex name");
      int v = vid(nv);
      expect_keyword("at");
      Token ct = lex.peek();
      Rational coord = expect_rational();
      if (coord < Rational(0) || !(coord < Rational(1)))
        lex.fail(ct, "node coordinate must lie in [0,1)");
      if (vertices[v].genus == 0) {
        doc.warnings.push_back(
            {nv.line, nv.col, "node coordinate on genus-0 vertex '" + nv.text + "' has no effect"});
      } else if (v == e.a && !e.node_a) {
        e.node_a = coord;
      } else if (v == e.b && !e.node_b) {
        e.node_b = coord;
      } else if (v != e.a && v != e.b) {
        lex.fail(nv, "'" + nv.text + "' is not an endpoint of edge '" + e.name + "'");
      } else {
        lex.fail(nv, "duplicate node clause for vertex '" + nv.text + "'");
      }
    }
    expect_punct(";");
    auto missing_node = [&](int v, const std::optional<Rational>& node) {
      return vertices[v].genus == 1 && !node;
    };
    if (missing_node(e.a, e.node_a) || missing_node(e.b, e.node_b))
      lex.fail(name, "edge '" + e.name + "' needs a node coordinate at its genus-1 endpoints");
    edge_ids[e.name] = static_cast<int>(edges.size());
    edges.push_back(e);
  }

  Point parse_location() {
    Token name = expect_ident("a location");
    if (lex.peek().kind == Token::Punct && lex.peek().text == "(") {
      auto it = edge_ids.find(name.text);
      if (it == edge_ids.end()) lex.fail(name, "undeclared edge '" + name.text + "'");
      lex.take();
      Token ot = lex.peek();
      Rational off = expect_rational();
      expect_punct(")");
      if (!(off > Rational(0)) || !(off < edges[it->second].length))
        lex.fail(ot, "offset " + off.str() + " is not interior to edge '" + name.text + "'");
      return Point::on_edge(it->second, off);
    }
    if (lex.peek().kind == Token::Punct && lex.peek().text == "[") {
      auto it = vertex_ids.find(name.text);
      if (it == vertex_ids.end()) lex.fail(name, "undeclared vertex '" + name.text + "'");
      lex.take();
      Token ct = lex.peek();
      Rational coord = expect_rational();
      expect_punct("]");
      if (coord < Rational(0) || !(coord < Rational(1)))
        lex.fail(ct, "component coordinate must lie in [0,1)");
      return Point::on_component(it->second, coord);
    }
    if (auto it = vertex_ids.find(name.text); it != vertex_ids.end()) {
      if (vertices[it->second].genus == 1)
        lex.fail(name, "vertex '" + name.text +
                           "' has genus 1; use '" + name.text + "[coordinate]' for a point on it");
      return Point::vertex(it->second);
    }
    if (auto it = doc.points.find(name.text); it != doc.points.end()) return it->second;
    lex.fail(name, "unknown location '" + name.text + "'");
  }

  void parse_divisor(const Token& at) {
    if (!complex_seen) lex.fail(at, "divisors must follow the complex block");
    Token name = expect_ident("a divisor name");
    if (doc.divisors.count(name.text)) lex.fail(name, "duplicate divisor '" + name.text + "'");
    expect_punct("{");
    Divisor d;
    while (true) {
      if (lex.peek().kind == Token::Punct && lex.peek().text == "}") {
        lex.take();
        break;
      }
      long long coeff = expect_integer();
      expect_keyword("at");
      Point p = parse_location();
      expect_punct(";");
      d.add(p, coeff);
    }
    doc.divisor_order.push_back(name.text);
    doc.divisors.emplace(name.text, std::move(d));
  }

  void parse_point(const Token& at) {
    if (!complex_seen) lex.fail(at, "points must follow the complex block");
    Token name = expect_ident("a point name");
    if (doc.points.count(name.text)) lex.fail(name, "duplicate point '" + name.text + "'");
    expect_keyword("at");
    Point p = parse_location();
    expect_punct(";");
    doc.point_order.push_back(name.text);
    doc.points.emplace(name.text, p);
  }
};

}  // namespace

int ComplexDocument::vertex_id(const std::string& vname) const {
  for (int v = 0; v < complex.vertex_count(); ++v)
    if (complex.vertices()[v].name == vname) return v;
  return -1;
}

int ComplexDocument::edge_id(const std::string& ename) const {
  for (int e = 0; e < complex.edge_count(); ++e)
    if (complex.edges()[e].name == ename) return e;
  return -1;
}

const Divisor& ComplexDocument::divisor(const std::string& dname) const {
  auto it = divisors.find(dname);
  if (it == divisors.end()) throw InputError("unknown divisor '" + dname + "'");
  return it->second;
}

Point ComplexDocument::location(const std::string& text) const {
  auto fail = [&] { throw InputError("malformed location '" + text + "'"); };
  if (text.empty()) fail();
  std::size_t open = text.find_first_of("([");
  if (open == std::string::npos) {
    if (auto it = points.find(text); it != points.end()) return it->second;
    int v = vertex_id(text);
    if (v < 0) throw InputError("unknown location '" + text + "'");
    if (complex.genus_of_vertex(v) == 1)
      throw InputError("vertex '" + text + "' has genus 1; use '" + text + "[coordinate]'");
    return Point::vertex(v);
  }
  char close = text[open] == '(' ? ')' : ']';
  if (text.back() != close) fail();
  std::string name = text.substr(0, open);
  Rational value = Rational::parse(text.substr(open + 1, text.size() - open - 2));
  if (close == ')') {
    int e = edge_id(name);
    if (e < 0) throw InputError("unknown edge '" + name + "'");
    Point p = Point::on_edge(e, value);
    complex.validate_point(p);
    return p;
  }
  int v = vertex_id(name);
  if (v < 0) throw InputError("unknown vertex '" + name + "'");
  Point p = Point::on_component(v, value);
  complex.validate_point(p);
  return p;
}

ComplexDocument parse_document(const std::string& text) {
  Parser parser(text);
  parser.run();
  return std::move(parser.doc);
}

std::string location_str(const ComplexDocument& doc, const Point& p) {
  switch (p.kind) {
    case PointKind::Vertex:
      return doc.complex.vertices()[p.id].name;
    case PointKind::Edge:
      return doc.complex.edges()[p.id].name + "(" + p.pos.str() + ")";
    case PointKind::Component:
      return doc.complex.vertices()[p.id].name + "[" + p.pos.str() + "]";
  }
  return "?";
}

std::string print_document(const ComplexDocument& doc) {
  std::ostringstream out;
  out << "complex " << doc.name << " {\n";
  for (const auto& v : doc.complex.vertices())
    out << "  vertex " << v.name << " genus " << v.genus << " ;\n";
  for (const auto& e : doc.complex.edges()) {
    out << "  edge " << e.name << " " << doc.complex.vertices()[e.a].name << " "
        << doc.complex.vertices()[e.b].name << " length " << e.length.str();
    if (e.node_a) out << " node " << doc.complex.vertices()[e.a].name << " at " << e.node_a->str();
    if (e.node_b) out << " node " << doc.complex.vertices()[e.b].name << " at " << e.node_b->str();
    out << " ;\n";
  }
  out << "}\n";
  for (const auto& name : doc.point_order)
    out << "point " << name << " at " << location_str(doc, doc.points.at(name)) << " ;\n";
  for (const auto& name : doc.divisor_order) {
    out << "divisor " << name << " {\n";
    for (const auto& [p, c] : doc.divisors.at(name).coeffs())
      out << "  " << c << " at " << location_str(doc, p) << " ;\n";
    out << "}\n";
  }
  return out.str();
}

}  // namespace tdw
