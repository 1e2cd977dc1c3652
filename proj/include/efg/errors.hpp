#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace efg {

// Base for all library errors. `name()` is the stable machine-readable
// identifier surfaced in CLI reports and exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define EFG_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

EFG_DEFINE_ERROR(OverflowDomain);
EFG_DEFINE_ERROR(UnknownId);
EFG_DEFINE_ERROR(BadParam);
EFG_DEFINE_ERROR(NotProper);
EFG_DEFINE_ERROR(EmptyWindow);
EFG_DEFINE_ERROR(DegenerateFit);
EFG_DEFINE_ERROR(RhoOutOfRange);
EFG_DEFINE_ERROR(GridTooSmall);
EFG_DEFINE_ERROR(NotInAsymptoticRegime);
EFG_DEFINE_ERROR(NotCertified);
EFG_DEFINE_ERROR(ZeroAmbiguous);
EFG_DEFINE_ERROR(AllSkipped);
EFG_DEFINE_ERROR(DomainError);

#undef EFG_DEFINE_ERROR

} // namespace efg
