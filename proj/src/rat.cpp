#include "heightlab/rat.hpp"

#include <cctype>

namespace heightlab {

QQ parse_rational(const std::string& s) {
    if (s.empty()) fail(ErrorKind::ParseError, "empty rational literal");
    std::string t = s;
    for (char c : t) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
    try {
        QQ q(t);
        q.canonicalize();
        if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
        return q;
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
}

std::string format_rational(const QQ& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ZZ zz_pow(const ZZ& base, unsigned long e) {
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

QQ qq_pow(const QQ& base, long e) {
    if (e == 0) return QQ(1);
    if (e < 0) {
        if (base == 0) fail(ErrorKind::DomainError, "0 to negative power");
        return QQ(1) / qq_pow(base, -e);
    }
    QQ r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

ZZ isqrt(const ZZ& n) {
    if (n < 0) fail(ErrorKind::DomainError, "isqrt of negative");
    ZZ r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool icbrt_exact(const ZZ& n, ZZ& root) {
    ZZ a = abs(n);
    ZZ r;
    int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3);
    if (!exact) return false;
    root = (n < 0) ? ZZ(-r) : r;
    return true;
}

}  // namespace heightlab
