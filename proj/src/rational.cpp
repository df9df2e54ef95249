#include "kn/rational.hpp"

#include <cctype>

namespace kn {

double to_double(const Rational& q) {
    return q.convert_to<double>();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw FormatError("empty rational literal");
    std::size_t slash = text.find('/');
    std::size_t start = 0;
    auto check_int = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw FormatError("bad rational literal: '" + text + "'");
        std::size_t i = from;
        if (text[i] == '-' || text[i] == '+') ++i;
        if (i >= to) throw FormatError("bad rational literal: '" + text + "'");
        for (; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw FormatError("bad rational literal: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(start, text.size());
        return Rational(text);
    }
    check_int(start, slash);
    check_int(slash + 1, text.size());
    if (text[slash + 1] == '-' || text[slash + 1] == '+')
        throw FormatError("signed denominator: '" + text + "'");
    try {
        Rational q(text);
        if (boost::multiprecision::denominator(q) == 0)
            throw FormatError("zero denominator: '" + text + "'");
        return q;
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception&) {
        throw FormatError("bad rational literal: '" + text + "'");
    }
}

std::string rational_to_string(const Rational& q) {
    return q.str();
}

bool exact_is_zero(const ExactVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

GaussianRational exact_hermitian_inner(const ExactVector& u, const ExactVector& v) {
    if (u.size() != v.size())
        throw DimensionError("hermitian_inner: dimension mismatch");
    GaussianRational acc;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc = acc + u[i] * v[i].conj();
    return acc;
}

} // namespace kn
