#ifndef CONFORMANT_ERRORS_H
#define CONFORMANT_ERRORS_H

#include <stdexcept>
#include <string>

namespace conformant {
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const {return "Error";}
};

#define CONFORMANT_ERROR(name)                              \
    class name : public Error {                             \
public:                                                     \
        using Error::Error;                                 \
        const char *kind() const override {return #name;}   \
    }

CONFORMANT_ERROR(PreconditionViolation);
CONFORMANT_ERROR(InconsistentResult);
CONFORMANT_ERROR(NotAPossibleInitialState);
CONFORMANT_ERROR(UnsupportedFeature);
CONFORMANT_ERROR(GroundingBlowup);
CONFORMANT_ERROR(InconsistentInit);
CONFORMANT_ERROR(PiBlowup);
CONFORMANT_ERROR(ValidityUndecidedAtCap);
CONFORMANT_ERROR(WidthSearchCap);
CONFORMANT_ERROR(InvalidSpec);
CONFORMANT_ERROR(TooManyInitialStates);
CONFORMANT_ERROR(TooManyModels);
CONFORMANT_ERROR(BasisStateNotFound);
CONFORMANT_ERROR(NoPlanFound);
CONFORMANT_ERROR(BudgetExhausted);
CONFORMANT_ERROR(UnknownAction);
CONFORMANT_ERROR(InvalidParameters);

#undef CONFORMANT_ERROR

class SyntaxError : public Error {
    int line_;
    int column_;
public:
    SyntaxError(const std::string &msg, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const {return line_;}
    int column() const {return column_;}
    const char *kind() const override {return "SyntaxError";}
};
}

#endif
