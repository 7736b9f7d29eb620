#include "hcx/io.hpp"

#include <fstream>
#include <sstream>

namespace hcx {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

Rat rat_token(const std::string& tok, std::size_t line) {
  try {
    return Rat::parse(tok);
  } catch (const Error&) {
    syntax(line, "malformed rational '" + tok + "'");
  }
}

}  // namespace

ConstraintSystem parse_sys(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "dim") {
    syntax(lines.empty() ? 1 : lines[0].number, "expected header 'dim n'");
  }
  std::size_t n = 0;
  try {
    n = std::stoul(lines[0].tokens[1]);
  } catch (const std::exception&) {
    syntax(lines[0].number, "bad dimension '" + lines[0].tokens[1] + "'");
  }
  if (n == 0) syntax(lines[0].number, "dimension must be positive");
  ConstraintSystem sys(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.tokens.size() != n + 2) {
      syntax(l.number, "expected " + std::to_string(n) + " coefficients, a relation and a right-hand side");
    }
    RVec coeffs(n);
    for (std::size_t c = 0; c < n; ++c) coeffs[c] = rat_token(l.tokens[c], l.number);
    const std::string& rel = l.tokens[n];
    const Rat rhs = rat_token(l.tokens[n + 1], l.number);
    if (coeffs.is_zero()) throw Error(ErrorCode::TrivialInequality, "line " + std::to_string(l.number) + ": all coefficients are zero");
    if (rel == ">=") {
      sys.add_ge(coeffs, rhs);
    } else if (rel == ">") {
      sys.add_gt(coeffs, rhs);
    } else if (rel == "=") {
      sys.add_eq(coeffs, rhs);
    } else {
      syntax(l.number, "unknown relation '" + rel + "'");
    }
  }
  return sys;
}

BallFamily parse_balls(std::string_view text) {
  std::vector<Ball> balls;
  for (const auto& l : tokenize(text)) {
    std::vector<Rat> center;
    std::optional<Rat> radius;
    bool after_sep = false;
    for (std::string tok : l.tokens) {
      // Accept `;` glued to either neighbour.
      while (!tok.empty()) {
        const auto semi = tok.find(';');
        const std::string head = tok.substr(0, semi);
        if (!head.empty()) {
          if (!after_sep) {
            center.push_back(rat_token(head, l.number));
          } else if (!radius) {
            radius = rat_token(head, l.number);
          } else {
            syntax(l.number, "more than one radius");
          }
        }
        if (semi == std::string::npos) break;
        if (after_sep) syntax(l.number, "more than one ';'");
        after_sep = true;
        tok = tok.substr(semi + 1);
      }
    }
    if (!after_sep || !radius) syntax(l.number, "expected 'c1 .. cn ; r'");
    if (center.empty()) syntax(l.number, "empty center");
    balls.push_back({RVec(std::move(center)), *radius});
  }
  return BallFamily(std::move(balls));
}

namespace {

Rat json_rat(const Json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(ErrorCode::SyntaxError, "expected an integer or a rational string, got " + j.dump());
}

bool is_atom(const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_array() && !j[1].is_array(); }

AffineAtom json_atom(const Json& j) {
  if (!is_atom(j)) throw Error(ErrorCode::SyntaxError, "expected atom [[w...], b], got " + j.dump());
  std::vector<Rat> w;
  for (const auto& e : j[0]) w.push_back(json_rat(e));
  return {RVec(std::move(w)), json_rat(j[1])};
}

std::optional<BoundFunc> json_bound(const Json& entry, const char* key, BoundKind kind, const Rat& lambda) {
  if (!entry.contains(key) || entry[key].is_null()) return std::nullopt;
  const Json& list = entry[key];
  if (!list.is_array() || list.empty()) throw Error(ErrorCode::SyntaxError, std::string("'") + key + "' must be a non-empty list");
  BoundFunc f{kind, {}, lambda};
  for (const auto& el : list) {
    if (is_atom(el)) {
      f.groups.push_back({json_atom(el)});
      continue;
    }
    if (!el.is_array() || el.empty()) throw Error(ErrorCode::SyntaxError, "expected an atom or a group of atoms");
    std::vector<AffineAtom> group;
    for (const auto& a : el) group.push_back(json_atom(a));
    f.groups.push_back(std::move(group));
  }
  return f;
}

}  // namespace

BoxConstraintSet parse_q(std::string_view text, const FeasibilityOptions& opts) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("Q JSON: ") + e.what());
  }
  try {
    const auto dim = doc.at("dim").get<long>();
    if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "dim must be positive");
    std::vector<CoordBounds> coords;
    for (const auto& entry : doc.at("bounds")) {
      const auto i = entry.at("i").get<long>();
      if (i < 1 || i > dim) throw Error(ErrorCode::IndexOutOfRange, "bound index " + std::to_string(i));
      const Rat lambda = entry.contains("lambda") ? json_rat(entry["lambda"]) : Rat(1);
      coords.push_back({static_cast<std::size_t>(i - 1), json_bound(entry, "lower", BoundKind::Lower, lambda),
                        json_bound(entry, "upper", BoundKind::Upper, lambda)});
    }
    return BoxConstraintSet(static_cast<std::size_t>(dim), std::move(coords), opts);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("Q JSON: ") + e.what());
  }
}

std::string rat_json(const Rat& r) { return r.str(); }

Json vec_json(const RVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Json index_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json face_json(const FaceDesc& f) {
  Json out;
  out["active"] = index_json(f.active);
  out["dim"] = f.dim_face;
  return out;
}

Json report_json(const InjectivityReport& r) {
  Json out;
  out["verdict"] = verdict_name(r.verdict);
  Json faces = Json::array();
  for (const auto& fc : r.per_face) {
    Json f = face_json(fc.face);
    f["asymmetric_facet"] = fc.witness ? Json(to_string(*fc.witness)) : Json(nullptr);
    faces.push_back(std::move(f));
  }
  out["faces"] = std::move(faces);
  out["failing_face"] = r.failing_face ? face_json(*r.failing_face) : Json(nullptr);
  return out;
}

Json ball_family_json(const BallFamily& fam) {
  Json out = Json::array();
  for (const auto& b : fam.balls()) {
    Json j;
    j["center"] = vec_json(b.center);
    j["radius"] = b.radius.str();
    out.push_back(std::move(j));
  }
  return out;
}

Json ball_check_json(const BallCheck& c) {
  Json out;
  out["verdict"] = ball_verdict_name(c.verdict);
  if (c.bad_pair) out["bad_pair"] = Json::array({c.bad_pair->first + 1, c.bad_pair->second + 1});
  if (!c.box_lo.empty()) {
    out["box_lo"] = vec_json(c.box_lo);
    out["box_hi"] = vec_json(c.box_hi);
  }
  if (c.common_point) out["common_point"] = vec_json(*c.common_point);
  return out;
}

Json subspace_json(const SubspaceCertificate& cert) {
  Json out;
  out["J"] = index_json(cert.J);
  Json rows = Json::array();
  for (std::size_t r = 0; r < cert.rest.size(); ++r) {
    Json row;
    row["i"] = cert.rest[r] + 1;
    row["c"] = vec_json(cert.coeffs[r]);
    rows.push_back(std::move(row));
  }
  out["coefficients"] = std::move(rows);
  return out;
}

Json path_json(const PathDesc& p) {
  Json out;
  Json verts = Json::array();
  for (auto v : p.vertices) verts.push_back("x" + std::to_string(v));
  out["vertices"] = std::move(verts);
  out["edges"] = index_json(p.edges);
  Json labels = Json::array();
  for (const auto& l : p.labels) {
    labels.push_back(Json{{"a", l.a.str()}, {"b", l.b.str()}, {"rel", rel_symbol(l.rel)}, {"c", l.c.str()}});
  }
  out["labels"] = std::move(labels);
  return out;
}

Json residue_json(const Residue& r) {
  Json out;
  out["from"] = "x" + std::to_string(r.from);
  out["to"] = "x" + std::to_string(r.to);
  out["a"] = r.a.str();
  out["b"] = r.b.str();
  out["rel"] = rel_symbol(r.rel);
  out["c"] = r.c.str();
  out["text"] = r.str();
  return out;
}

}  // namespace hcx
