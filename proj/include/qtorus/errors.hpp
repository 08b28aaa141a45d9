#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

/// Base class for all domain errors; `code()` is the stable machine-readable name.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define QTORUS_DEFINE_ERROR(NAME)                                            \
    class NAME : public Error {                                              \
    public:                                                                  \
        explicit NAME(const std::string& what = "") : Error(#NAME, what) {}  \
    }

QTORUS_DEFINE_ERROR(DivisionByZero);
QTORUS_DEFINE_ERROR(KindMismatch);
QTORUS_DEFINE_ERROR(ZeroArgument);
QTORUS_DEFINE_ERROR(OutsideSubring);
QTORUS_DEFINE_ERROR(NotUnimodular);
QTORUS_DEFINE_ERROR(UnsupportedScalarKind);
QTORUS_DEFINE_ERROR(NotFgc);
QTORUS_DEFINE_ERROR(CanonicalizationFailed);
QTORUS_DEFINE_ERROR(NotCanonical);
QTORUS_DEFINE_ERROR(PresentationMismatch);
QTORUS_DEFINE_ERROR(NotInPositivePart);
QTORUS_DEFINE_ERROR(SizeMismatch);
QTORUS_DEFINE_ERROR(NotDiagonal);
QTORUS_DEFINE_ERROR(NotInSl);
QTORUS_DEFINE_ERROR(BadCharacteristic);
QTORUS_DEFINE_ERROR(ChainMismatch);
QTORUS_DEFINE_ERROR(NotAssociativeWord);
QTORUS_DEFINE_ERROR(SystemInvalid);
QTORUS_DEFINE_ERROR(NotCyclic);
QTORUS_DEFINE_ERROR(NotInvertible);
QTORUS_DEFINE_ERROR(WindowExhausted);
QTORUS_DEFINE_ERROR(VerificationFailed);
QTORUS_DEFINE_ERROR(NoPrimeInRange);
QTORUS_DEFINE_ERROR(WitnessDegenerates);
QTORUS_DEFINE_ERROR(ZeroVector);
QTORUS_DEFINE_ERROR(NotPositive);
QTORUS_DEFINE_ERROR(ParseError);

#undef QTORUS_DEFINE_ERROR

} // namespace qtorus
