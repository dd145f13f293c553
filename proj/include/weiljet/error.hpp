#pragma once
#include <stdexcept>
#include <string>

namespace weiljet {

// Error taxonomy. Each condition named by an interface contract gets its own
// type so callers (and tests) can catch precisely.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WEILJET_ERROR(Name)                                                  \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(what) {}              \
    };

WEILJET_ERROR(NotAUnitError)          // inversion of a non-unit
WEILJET_ERROR(RingMismatchError)      // mixing scalars from different rings
WEILJET_ERROR(AlgebraMismatchError)   // mixing elements of different algebras
WEILJET_ERROR(ArityMismatchError)     // wrong number of arguments
WEILJET_ERROR(DomainError)            // evaluation outside a map's domain
WEILJET_ERROR(SyntaxError)            // parse failure (expressions, presets)
WEILJET_ERROR(SingularTimeError)      // difference quotient at non-unit time
WEILJET_ERROR(NotPolynomialError)     // operation requires a polynomial map
WEILJET_ERROR(DivisionNotExactError)  // symbolic division left a remainder
WEILJET_ERROR(NotATensorError)        // factor swap on a non-tensor algebra
WEILJET_ERROR(UngradedError)          // graded operation on ungraded algebra
WEILJET_ERROR(NotAMorphismError)      // applying an invalid morphism matrix
WEILJET_ERROR(NoSeparatingScalarsError) // ring lacks units for separation
WEILJET_ERROR(ExhaustedError)         // unit sampling ran out of candidates
WEILJET_ERROR(NotInImageError)        // point not in the embedding's image
WEILJET_ERROR(InvalidPresetError)     // malformed algebra preset
#undef WEILJET_ERROR

} // namespace weiljet
