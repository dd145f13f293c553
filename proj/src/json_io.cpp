#include "weiljet/json_io.hpp"

#include <cctype>
#include <cstdint>

namespace weiljet {

Json scalar_json(const Scalar& c) {
    if (c.ring().is_rationals()) return c.to_string();
    return c.residue_value();
}

Json element_json(const WeilElement& x) {
    Json arr = Json::array();
    for (const Scalar& c : x.coeffs()) arr.push_back(scalar_json(c));
    return arr;
}

namespace {

Json exps_json(const Exp& e) {
    Json arr = Json::array();
    for (uint32_t v : e) arr.push_back(v);
    return arr;
}

} // namespace

Json algebra_json(const MonomialPtr& a, bool table) {
    Json j;
    j["preset"] = a->describe();
    j["nvars"] = a->nvars();
    j["cap"] = a->cap();
    Json gens = Json::array();
    for (const Exp& g : a->extra_gens()) gens.push_back(exps_json(g));
    j["extra_gens"] = std::move(gens);
    Json basis = Json::array();
    for (const Exp& b : a->basis()) basis.push_back(exps_json(b));
    j["basis"] = std::move(basis);
    j["dim"] = a->dim();
    j["nilpotency"] = a->nilpotency();
    if (table) {
        Json rows = Json::array();
        for (int i = 0; i < a->dim(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < a->dim(); ++k) {
                int32_t idx = a->product_index(i, k);
                row.push_back(idx < 0 ? std::string("0")
                                      : monomial_string(a->basis_monomial(idx)));
            }
            rows.push_back(std::move(row));
        }
        j["table"] = std::move(rows);
    }
    return j;
}

Json polymap_json(const PolyMap& p) {
    Json j;
    j["arity"] = p.arity();
    j["coarity"] = p.coarity();
    Json terms = Json::array();
    for (int w = 0; w < p.coarity(); ++w) {
        for (const auto& [e, c] : p.component(w).terms()) {
            Json term;
            term["out"] = w;
            term["exps"] = exps_json(e);
            term["coef"] = scalar_json(c);
            terms.push_back(std::move(term));
        }
    }
    j["terms"] = std::move(terms);
    return j;
}

Json taylor_json(const TaylorPoly& t) {
    Json j = polymap_json(t.poly);
    Json base = Json::array();
    for (const Scalar& c : t.base_point) base.push_back(scalar_json(c));
    j["base_point"] = std::move(base);
    j["order"] = t.order;
    return j;
}

Json jet_json(const JetValue& jv) {
    Json j;
    j["order"] = jv.order;
    Json comps = Json::array();
    for (const auto& comp : jv.components) {
        Json row = Json::array();
        for (const Scalar& c : comp) row.push_back(scalar_json(c));
        comps.push_back(std::move(row));
    }
    j["components"] = std::move(comps);
    return j;
}

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

std::vector<Scalar> parse_point(const Ring& ring, const std::string& text) {
    std::vector<Scalar> out;
    for (const std::string& part : split_on(text, ',')) {
        if (part.empty()) throw SyntaxError("empty coordinate in point '" + text + "'");
        out.push_back(Scalar::parse(ring, part));
    }
    return out;
}

std::vector<WeilElement> parse_elements(const AlgebraPtr& a, const std::string& text) {
    std::vector<WeilElement> out;
    for (const std::string& chunk : split_on(text, ';')) {
        std::vector<Scalar> coeffs = parse_point(a->ring(), chunk);
        if (static_cast<int>(coeffs.size()) != a->dim())
            throw SyntaxError("element needs " + std::to_string(a->dim()) +
                              " coefficients, got " + std::to_string(coeffs.size()));
        out.emplace_back(a, std::move(coeffs));
    }
    return out;
}

namespace {

class PresetParser {
public:
    PresetParser(const Ring& ring, const std::string& text) : ring_(ring), text_(text) {}

    MonomialPtr parse() {
        MonomialPtr a = term();
        skip_ws();
        if (pos_ != text_.size())
            throw InvalidPresetError("trailing characters in preset '" + text_ + "'");
        return a;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_word(const std::string& w) {
        skip_ws();
        if (text_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    int number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start || pos_ - start > 4)
            throw InvalidPresetError("expected a small number at position " +
                                     std::to_string(start) + " in '" + text_ + "'");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    MonomialPtr term() {
        if (eat_word("tensor(")) {
            MonomialPtr a = term();
            if (!eat(',')) throw InvalidPresetError("tensor needs two arguments");
            MonomialPtr b = term();
            if (!eat(')')) throw InvalidPresetError("unclosed tensor(");
            return tensor(a, b);
        }
        if (eat_word("whitney(")) {
            MonomialPtr a = term();
            if (!eat(',')) throw InvalidPresetError("whitney needs two arguments");
            MonomialPtr b = term();
            if (!eat(')')) throw InvalidPresetError("unclosed whitney(");
            return whitney_sum(a, b);
        }
        if (eat_word("jet:")) return make_jet(ring_, number());
        if (eat_word("tan:")) return make_tangent(ring_, number());
        if (eat_word("trunc:")) {
            int n = number();
            if (!eat(',')) throw InvalidPresetError("trunc needs n,r");
            return make_truncated(ring_, n, number());
        }
        throw InvalidPresetError("unrecognized preset at position " + std::to_string(pos_) +
                                 " in '" + text_ + "'");
    }

    Ring ring_;
    const std::string& text_;
    size_t pos_ = 0;
};

} // namespace

MonomialPtr parse_preset(const Ring& ring, const std::string& text) {
    return PresetParser(ring, text).parse();
}

} // namespace weiljet
