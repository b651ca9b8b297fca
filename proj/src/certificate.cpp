#include "sphcodes/certificate.hpp"

#include <algorithm>

namespace sphcodes {

Certificate::Certificate(std::string name, Mode mode, Tolerance tol)
    : name_(std::move(name)), mode_(mode), tol_(tol) {}

const CertificateLink& Certificate::add_link(std::string description, const Scalar& lhs, const Scalar& rhs) {
    // A certificate in exact mode never mixes in float values; demote instead of lying.
    if (!lhs.is_exact() || !rhs.is_exact()) mode_ = Mode::floating;
    CertificateLink link{std::move(description), lhs, rhs, rhs - lhs, false};
    link.verdict = mode_ == Mode::exact ? lhs <= rhs : leq_within(lhs, rhs, tol_);
    links_.push_back(std::move(link));
    return links_.back();
}

bool Certificate::passed() const {
    return std::all_of(links_.begin(), links_.end(), [](const CertificateLink& l) { return l.verdict; });
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json links = nlohmann::json::array();
    for (const auto& l : links_) {
        links.push_back({{"name", l.description},
                         {"lhs", l.lhs.to_string()},
                         {"rhs", l.rhs.to_string()},
                         {"slack", l.slack.to_string()},
                         {"slack_approx", l.slack.to_double()},
                         {"mode", std::string(to_string(mode_))},
                         {"verdict", l.verdict}});
    }
    nlohmann::json j{{"certificate", name_},
                     {"mode", std::string(to_string(mode_))},
                     {"verdict", passed()},
                     {"links", std::move(links)}};
    if (mode_ == Mode::floating) j["tolerance"] = {{"rel", tol_.rel}, {"abs", tol_.abs}};
    if (!notes_.empty()) j["notes"] = notes_;
    return j;
}

}  // namespace sphcodes
