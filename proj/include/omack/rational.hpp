#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace omack {

// All arithmetic in this project is exact rational; Rat is always kept in
// canonical lowest terms with positive denominator (GMP maintains this
// after canonicalize()).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Canonical string form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

class Error : public std::runtime_error {
public:
    enum class Kind {
        NotAssociative,
        NoIdentity,
        NoInverse,
        UnknownFamily,
        GroupTooLarge,
        PairNotNested,
        LevelMismatch,
        NotAdmissible,
        NotAdmissibleTransfer,
        NotAbove,
        NotClassFunctor,
        InadmissibleAction,
        SingularMarks,
        DimensionMismatch,
        Parse,
        Internal,
    };

    Error(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

} // namespace omack
