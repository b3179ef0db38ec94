#include "simpctx/scalars.h"

namespace simpctx {

std::optional<Rational> parseRational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string num = text, den = "1";
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (num.empty() || den.empty()) return std::nullopt;
    }
    auto digits = [](const std::string& s) {
        std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (k == s.size()) return false;
        for (; k < s.size(); ++k)
            if (!isdigit(static_cast<unsigned char>(s[k]))) return false;
        return true;
    };
    if (!digits(num) || !digits(den)) return std::nullopt;
    try {
        Rational q(num + "/" + den);
        if (q.get_den() == 0) return std::nullopt;  // before canonicalize: it divides by the gcd
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string formatRational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string formatGaussian(const GaussianRational& z) {
    if (z.im == 0) return formatRational(z.re);
    std::string out = z.re == 0 ? "" : formatRational(z.re);
    std::string im = formatRational(z.im);
    if (!out.empty() && z.im > 0) out += "+";
    return out + im + "i";
}

}  // namespace simpctx
