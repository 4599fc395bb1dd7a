#include "egfp/tags.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace egfp {

bool TagAtom::inverse_of(const TagAtom& other) const {
    switch (kind) {
        case Kind::coeff: return other.kind == Kind::coeff_inv && other.index == index;
        case Kind::coeff_inv: return other.kind == Kind::coeff && other.index == index;
        case Kind::assigned: return other.kind == Kind::assigned_inv && other.name == name;
        case Kind::assigned_inv: return other.kind == Kind::assigned && other.name == name;
    }
    return false;
}

std::string TagAtom::str() const {
    switch (kind) {
        case Kind::coeff: return "A" + std::to_string(index);
        case Kind::coeff_inv: return "Ainv" + std::to_string(index);
        case Kind::assigned: return name;
        case Kind::assigned_inv: return name + "^-1";
    }
    return "?";
}

Tag Tag::identity() { return Tag({TagTerm{1, {}}}); }
Tag Tag::coefficient(int j) { return Tag({TagTerm{1, {TagAtom{TagAtom::Kind::coeff, j, ""}}}}); }
Tag Tag::coefficient_inverse(int j) {
    return Tag({TagTerm{1, {TagAtom{TagAtom::Kind::coeff_inv, j, ""}}}});
}
Tag Tag::assigned(const std::string& name) {
    return Tag({TagTerm{1, {TagAtom{TagAtom::Kind::assigned, -1, name}}}});
}
Tag Tag::assigned_inverse(const std::string& name) {
    return Tag({TagTerm{1, {TagAtom{TagAtom::Kind::assigned_inv, -1, name}}}});
}

bool Tag::is_identity() const {
    return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].atoms.empty();
}

bool Tag::is_operation_free() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const TagTerm& t = terms_[0];
    return (t.coeff == 1 || t.coeff == -1) && t.atoms.size() <= 1;
}

void Tag::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const TagTerm& a, const TagTerm& b) { return a.atoms < b.atoms; });
    std::vector<TagTerm> out;
    for (const auto& t : terms_) {
        if (t.coeff == 0) continue;
        if (!out.empty() && out.back().atoms == t.atoms)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

Tag Tag::operator-() const {
    std::vector<TagTerm> t = terms_;
    for (auto& term : t) term.coeff = -term.coeff;
    return Tag(std::move(t));
}

Tag Tag::operator+(const Tag& other) const {
    std::vector<TagTerm> t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    Tag r(std::move(t));
    r.normalize();
    return r;
}

Tag Tag::operator*(const Tag& other) const {
    std::vector<TagTerm> out;
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            TagTerm t{a.coeff * b.coeff, a.atoms};
            // Concatenate, cancelling inverse pairs that meet at the seam.
            for (const auto& atom : b.atoms) {
                if (!t.atoms.empty() && t.atoms.back().inverse_of(atom))
                    t.atoms.pop_back();
                else
                    t.atoms.push_back(atom);
            }
            out.push_back(std::move(t));
        }
    }
    Tag r(std::move(out));
    r.normalize();
    return r;
}

std::optional<Tag> Tag::inverted() const {
    if (terms_.size() != 1) return std::nullopt;
    const TagTerm& t = terms_[0];
    if (t.coeff != 1 && t.coeff != -1) return std::nullopt;
    if (t.atoms.empty()) return Tag({TagTerm{t.coeff, {}}});
    if (t.atoms.size() != 1) return std::nullopt;
    TagAtom a = t.atoms[0];
    switch (a.kind) {
        case TagAtom::Kind::coeff: a.kind = TagAtom::Kind::coeff_inv; break;
        case TagAtom::Kind::coeff_inv: a.kind = TagAtom::Kind::coeff; break;
        case TagAtom::Kind::assigned: a.kind = TagAtom::Kind::assigned_inv; break;
        case TagAtom::Kind::assigned_inv: a.kind = TagAtom::Kind::assigned; break;
    }
    return Tag({TagTerm{t.coeff, {a}}});
}

Eigen::MatrixXcd Tag::evaluate(const std::vector<Eigen::MatrixXcd>& coeffs,
                               const std::map<std::string, Eigen::MatrixXcd>& assigned,
                               int n) const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& term : terms_) {
        Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
        for (const auto& atom : term.atoms) {
            const Eigen::MatrixXcd* base = nullptr;
            switch (atom.kind) {
                case TagAtom::Kind::coeff:
                case TagAtom::Kind::coeff_inv:
                    if (atom.index < 0 || atom.index >= static_cast<int>(coeffs.size()))
                        throw std::out_of_range("tag coefficient index " +
                                                std::to_string(atom.index));
                    base = &coeffs[atom.index];
                    break;
                case TagAtom::Kind::assigned:
                case TagAtom::Kind::assigned_inv: {
                    auto it = assigned.find(atom.name);
                    if (it == assigned.end())
                        throw std::out_of_range("unbound assigned matrix " + atom.name);
                    base = &it->second;
                    break;
                }
            }
            if (atom.kind == TagAtom::Kind::coeff_inv ||
                atom.kind == TagAtom::Kind::assigned_inv) {
                // prod <- prod * base^{-1}, via a solve on the right.
                prod = base->transpose()
                           .partialPivLu()
                           .solve(prod.transpose())
                           .transpose();
            } else {
                prod = prod * (*base);
            }
        }
        sum += static_cast<double>(term.coeff) * prod;
    }
    return sum;
}

std::string Tag::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const TagTerm& t = terms_[k];
        long long c = t.coeff;
        if (k == 0) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? "-" : "+";
        }
        long long a = c < 0 ? -c : c;
        std::string body;
        if (t.atoms.empty()) {
            body = (a == 1) ? "I" : std::to_string(a);
        } else {
            if (a != 1) body = std::to_string(a) + "*";
            for (std::size_t i = 0; i < t.atoms.size(); ++i) {
                if (i) body += "*";
                body += t.atoms[i].str();
            }
        }
        out += body;
    }
    return out;
}

namespace {

TagAtom parse_atom(const std::string& s) {
    if (s == "I") throw std::invalid_argument("identity is not an atom");
    if (s.size() > 4 && s.compare(0, 4, "Ainv") == 0 &&
        std::isdigit(static_cast<unsigned char>(s[4])))
        return TagAtom{TagAtom::Kind::coeff_inv, std::stoi(s.substr(4)), ""};
    if (s.size() > 1 && s[0] == 'A' && std::isdigit(static_cast<unsigned char>(s[1])))
        return TagAtom{TagAtom::Kind::coeff, std::stoi(s.substr(1)), ""};
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "^-1") == 0)
        return TagAtom{TagAtom::Kind::assigned_inv, -1, s.substr(0, s.size() - 3)};
    return TagAtom{TagAtom::Kind::assigned, -1, s};
}

} // namespace

Tag Tag::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "0") return Tag::zero();

    Tag sum = Tag::zero();
    std::size_t i = 0;
    while (i < s.size()) {
        long long sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && (s[j] != '-' || (j > 0 && s[j - 1] == '^'))) ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("bad tag text: " + text);

        long long mag = 1;
        std::vector<TagAtom> atoms;
        std::size_t p = 0;
        bool first = true;
        while (p < term.size()) {
            std::size_t q = term.find('*', p);
            std::string factor = term.substr(p, q == std::string::npos ? q : q - p);
            p = (q == std::string::npos) ? term.size() : q + 1;
            if (factor.empty()) throw std::invalid_argument("bad tag text: " + text);
            if (first && std::isdigit(static_cast<unsigned char>(factor[0])))
                mag = std::stoll(factor);
            else if (factor != "I")
                atoms.push_back(parse_atom(factor));
            first = false;
        }
        sum = sum + Tag({TagTerm{sign * mag, std::move(atoms)}});
    }
    return sum;
}

} // namespace egfp
