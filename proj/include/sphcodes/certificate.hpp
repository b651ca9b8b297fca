#ifndef SPHCODES_CERTIFICATE_HPP
#define SPHCODES_CERTIFICATE_HPP

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

#include "sphcodes/scalar.hpp"

namespace sphcodes {

/// One checked inequality `lhs <= rhs`.
struct CertificateLink {
    std::string description;
    Scalar lhs;
    Scalar rhs;
    Scalar slack;  // rhs - lhs
    bool verdict = false;
};

/// Pass/fail transcript for an inequality or a chain of them.
class Certificate {
public:
    Certificate(std::string name, Mode mode, Tolerance tol = {});

    /// Appends `lhs <= rhs`; the verdict honours the tolerance in float mode.
    const CertificateLink& add_link(std::string description, const Scalar& lhs, const Scalar& rhs);
    void add_note(const std::string& key, const std::string& value) { notes_[key] = value; }

    const std::string& name() const { return name_; }
    Mode mode() const { return mode_; }
    const std::vector<CertificateLink>& links() const { return links_; }
    const std::map<std::string, std::string>& notes() const { return notes_; }
    /// AND of all link verdicts (true for an empty certificate).
    bool passed() const;

    nlohmann::json to_json() const;

private:
    std::string name_;
    Mode mode_;
    Tolerance tol_;
    std::vector<CertificateLink> links_;
    std::map<std::string, std::string> notes_;
};

}  // namespace sphcodes

#endif  // SPHCODES_CERTIFICATE_HPP
