#include "ea/report.hpp"

#include <sstream>

#include "ea/error.hpp"

namespace ea {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ElementNotInCarrier: return "ElementNotInCarrier";
    case ErrorKind::NotEnumerable: return "NotEnumerable";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NoCover: return "NoCover";
    case ErrorKind::NoMeet: return "NoMeet";
    case ErrorKind::BPropertyMissing: return "BPropertyMissing";
    case ErrorKind::ComparabilityMissing: return "ComparabilityMissing";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::NotArchimedean: return "NotArchimedean";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NotFaithful: return "NotFaithful";
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::NotSpectral: return "NotSpectral";
    case ErrorKind::ElementNotFound: return "ElementNotFound";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
  }
  return "Error";
}

bool Report::passed() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

void Report::add(std::string name, bool passed, std::string detail) {
  checks.push_back(Check{std::move(name), passed, std::move(detail)});
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks) checks.push_back(c);
  sampled = sampled || other.sampled;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["passed"] = passed();
  j["sampled"] = sampled;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject << (sampled ? " [sampled]" : "") << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << (passed() ? "result: pass" : "result: violation") << "\n";
  return os.str();
}

}  // namespace ea
