#include "heightlab/config.hpp"

#include <cctype>
#include <sstream>

namespace heightlab::config {

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

long parse_long(const std::string& s) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad integer '" + s + "'");
    }
}

QMat parse_matrix_tokens(const std::vector<std::string>& toks, size_t from) {
    QMat m;
    QVec row;
    for (size_t i = from; i < toks.size(); ++i) {
        if (toks[i] == ";") {
            m.push_back(row);
            row.clear();
        } else {
            row.push_back(parse_rational(toks[i]));
        }
    }
    if (!row.empty()) m.push_back(row);
    return m;
}

std::string matrix_to_tokens(const QMat& m) {
    std::ostringstream out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out << " ;";
        for (const QQ& q : m[i]) out << " " << format_rational(q);
    }
    return out.str();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string block;
    bool seen_any = false;
    while (std::getline(in, line)) {
        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        seen_any = true;
        if (toks.size() == 2 && toks[1] == "{") {
            if (!block.empty()) fail(ErrorKind::ParseError, "nested blocks are not supported");
            block = toks[0];
            if (block != "field" && block != "variety" && block != "metric" && block != "ladder" &&
                block != "run")
                fail(ErrorKind::ParseError, "unknown block '" + block + "'");
            continue;
        }
        if (toks.size() == 1 && toks[0] == "}") {
            if (block.empty()) fail(ErrorKind::ParseError, "unmatched '}'");
            block.clear();
            continue;
        }
        const std::string& key = toks[0];
        auto rest_joined = [&](size_t from = 1) {
            std::string s;
            for (size_t i = from; i < toks.size(); ++i) {
                if (i > from) s += " ";
                s += toks[i];
            }
            return s;
        };
        if (block.empty()) {
            if (key == "experiment" && toks.size() == 2) {
                cfg.experiment = toks[1];
                continue;
            }
            fail(ErrorKind::ParseError, "unknown top-level key '" + key + "'");
        }
        if (block == "field") {
            if (key == "preset" && toks.size() == 2) cfg.field.preset = toks[1];
            else if (key == "minpoly") {
                cfg.field.minpoly.clear();
                for (size_t i = 1; i < toks.size(); ++i)
                    cfg.field.minpoly.emplace_back(parse_rational(toks[i]).get_num());
            } else if (key == "basis") cfg.field.basis = parse_matrix_tokens(toks, 1);
            else if (key == "h" && toks.size() == 2) cfg.field.h = parse_long(toks[1]);
            else if (key == "w" && toks.size() == 2) cfg.field.w = parse_long(toks[1]);
            else fail(ErrorKind::ParseError, "unknown field key '" + key + "'");
        } else if (block == "variety") {
            if (key == "ambient" && toks.size() == 2) cfg.variety.ambient = toks[1];
            else if (key == "lattice" && toks.size() == 2) cfg.variety.lattice = toks[1];
            else if (key == "equation") cfg.variety.equations.push_back(rest_joined());
            else if (key == "nonzero") cfg.variety.nonzero.push_back(rest_joined());
            else fail(ErrorKind::ParseError, "unknown variety key '" + key + "'");
        } else if (block == "metric") {
            if (key == "norm" && toks.size() == 2) cfg.metric.norm = toks[1];
            else if (key == "matrix") cfg.metric.matrix = parse_matrix_tokens(toks, 1);
            else fail(ErrorKind::ParseError, "unknown metric key '" + key + "'");
        } else if (block == "ladder") {
            if (key == "b0" && toks.size() == 2) cfg.ladder.b0 = parse_rational(toks[1]);
            else if (key == "factor" && toks.size() == 2) cfg.ladder.factor = parse_rational(toks[1]);
            else if (key == "rungs" && toks.size() == 2)
                cfg.ladder.rungs = static_cast<int>(parse_long(toks[1]));
            else fail(ErrorKind::ParseError, "unknown ladder key '" + key + "'");
        } else if (block == "run") {
            if (key == "seed" && toks.size() == 2)
                cfg.run.seed = static_cast<uint64_t>(parse_long(toks[1]));
            else if (key == "prime-cutoff" && toks.size() == 2)
                cfg.run.prime_cutoff = parse_long(toks[1]);
            else if (key == "mc-samples" && toks.size() == 2)
                cfg.run.mc_samples = parse_long(toks[1]);
            else if (key == "samples" && toks.size() == 2) cfg.run.samples = parse_long(toks[1]);
            else if (key == "out" && toks.size() == 2) cfg.run.out = toks[1];
            else if (key == "timings" && toks.size() == 2) cfg.run.timings = toks[1] == "on";
            else fail(ErrorKind::ParseError, "unknown run key '" + key + "'");
        }
    }
    if (!block.empty()) fail(ErrorKind::ParseError, "unterminated block '" + block + "'");
    if (!seen_any) fail(ErrorKind::ParseError, "empty config");
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    if (!cfg.experiment.empty()) out << "experiment " << cfg.experiment << "\n";
    out << "field {\n";
    if (!cfg.field.preset.empty()) out << "  preset " << cfg.field.preset << "\n";
    if (!cfg.field.minpoly.empty()) {
        out << "  minpoly";
        for (const ZZ& c : cfg.field.minpoly) out << " " << c.get_str();
        out << "\n";
    }
    if (!cfg.field.basis.empty()) out << "  basis" << matrix_to_tokens(cfg.field.basis) << "\n";
    if (cfg.field.preset.empty()) out << "  h " << cfg.field.h << "\n  w " << cfg.field.w << "\n";
    out << "}\n";
    out << "variety {\n";
    if (!cfg.variety.ambient.empty()) out << "  ambient " << cfg.variety.ambient << "\n";
    if (!cfg.variety.lattice.empty()) out << "  lattice " << cfg.variety.lattice << "\n";
    for (const auto& e : cfg.variety.equations) out << "  equation " << e << "\n";
    for (const auto& e : cfg.variety.nonzero) out << "  nonzero " << e << "\n";
    out << "}\n";
    out << "metric {\n  norm " << cfg.metric.norm << "\n";
    if (!cfg.metric.matrix.empty()) out << "  matrix" << matrix_to_tokens(cfg.metric.matrix) << "\n";
    out << "}\n";
    out << "ladder {\n  b0 " << format_rational(cfg.ladder.b0) << "\n  factor "
        << format_rational(cfg.ladder.factor) << "\n  rungs " << cfg.ladder.rungs << "\n}\n";
    out << "run {\n  seed " << cfg.run.seed << "\n  prime-cutoff " << cfg.run.prime_cutoff
        << "\n  mc-samples " << cfg.run.mc_samples << "\n  samples " << cfg.run.samples
        << "\n  out " << cfg.run.out << "\n  timings " << (cfg.run.timings ? "on" : "off")
        << "\n}\n";
    return out.str();
}

std::shared_ptr<const nf::NumberField> resolve_field(const FieldBlock& f) {
    if (f.preset == "Q" || f.preset == "rationals")
        return {std::shared_ptr<const nf::NumberField>{}, &nf::NumberField::rationals()};
    if (f.preset == "Qi" || f.preset == "gaussian")
        return {std::shared_ptr<const nf::NumberField>{}, &nf::NumberField::gaussian()};
    if (f.preset == "Qe" || f.preset == "eisenstein")
        return {std::shared_ptr<const nf::NumberField>{}, &nf::NumberField::eisenstein()};
    if (!f.preset.empty()) fail(ErrorKind::ParseError, "unknown field preset '" + f.preset + "'");
    if (f.minpoly.empty() || f.basis.empty())
        fail(ErrorKind::ParseError, "field needs a preset or minpoly plus basis");
    return nf::NumberField::create(f.minpoly, f.basis, f.h, f.w);
}

ResolvedAmbient resolve_ambient(const std::string& name) {
    ResolvedAmbient out;
    auto pn = [&](int n, const char* prefix) {
        for (int i = 0; i <= n; ++i) out.variables.push_back(prefix + std::to_string(i));
    };
    if (name == "P1" || name == "P2" || name == "P3") {
        int n = name[1] - '0';
        pn(n, "x");
        out.ambient = weilres::Ambient::projective(n + 1);
        out.dims = {n};
        return out;
    }
    if (name == "P1xP1") {
        pn(1, "x");
        pn(1, "y");
        out.ambient = weilres::Ambient::biprojective(2, 2);
        out.dims = {1, 1};
        return out;
    }
    if (name == "P3xP3") {
        pn(3, "x");
        pn(3, "y");
        out.ambient = weilres::Ambient::biprojective(4, 4);
        out.dims = {3, 3};
        return out;
    }
    fail(ErrorKind::ParseError, "unknown ambient '" + name + "'");
}

heights::ArchNorm resolve_norm(const MetricBlock& m, int blocks) {
    if (m.norm == "max") return heights::ArchNorm::max();
    if (m.norm == "euclidean") return heights::ArchNorm::euclidean();
    if (m.norm == "matrix") {
        if (m.matrix.empty()) fail(ErrorKind::ParseError, "matrix norm needs matrix entries");
        std::vector<QMat> twists(blocks, m.matrix);
        return heights::ArchNorm::matrix(std::move(twists));
    }
    fail(ErrorKind::ParseError, "unknown norm '" + m.norm + "'");
}

QVec resolve_ladder(const LadderBlock& l) {
    if (l.rungs < 1 || l.b0 < 1 || l.factor <= 1)
        fail(ErrorKind::ParseError, "ladder needs b0 >= 1, factor > 1, rungs >= 1");
    QVec out;
    QQ b = l.b0;
    for (int i = 0; i < l.rungs; ++i) {
        out.push_back(b);
        b *= l.factor;
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& text;
    size_t pos = 0;
    const nf::NumberField& F;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void bail(const std::string& what) {
        fail(ErrorKind::ParseError, what + " at offset " + std::to_string(pos) + " in '" + text + "'");
    }

    weilres::Poly parse() {
        weilres::Poly p = parse_expr();
        skip_ws();
        if (pos != text.size()) bail("trailing input");
        return p;
    }

    weilres::Poly parse_expr() {
        weilres::Poly acc = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) acc = acc.plus(parse_term());
            else if (eat('-')) acc = acc.minus(parse_term());
            else return acc;
        }
    }

    weilres::Poly parse_term() {
        weilres::Poly acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) acc = acc.times(parse_factor());
            else return acc;
        }
    }

    weilres::Poly parse_factor() {
        weilres::Poly base = parse_atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) bail("expected exponent");
            unsigned e = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
            return base.pow(e);
        }
        return base;
    }

    weilres::Poly parse_atom() {
        skip_ws();
        if (pos >= text.size()) bail("unexpected end");
        if (eat('(')) {
            weilres::Poly p = parse_expr();
            if (!eat(')')) bail("expected ')'");
            return p;
        }
        if (eat('-')) return parse_atom().scaled(F.from_rational(QQ(-1)));
        char c = text[pos];
        const int nv = static_cast<int>(vars.size());
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                ++pos;
            return weilres::Poly::constant(F, nv,
                                           F.from_rational(parse_rational(text.substr(start, pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "theta") return weilres::Poly::constant(F, nv, F.generator());
            for (int i = 0; i < nv; ++i)
                if (vars[i] == name) return weilres::Poly::variable(F, nv, i);
            bail("unknown symbol '" + name + "'");
        }
        bail("unexpected character");
    }
};

}  // namespace

weilres::Poly parse_polynomial(const std::string& text, const nf::NumberField& F,
                               const std::vector<std::string>& variables) {
    PolyParser p{text, 0, F, variables};
    return p.parse();
}

}  // namespace heightlab::config
