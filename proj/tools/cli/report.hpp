#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "perfro/perron.hpp"

namespace perfro::cli {

std::string format_complex(Complex z);

std::string text_report(const PerronReport& r, const std::string& title);
nlohmann::json json_report(const PerronReport& r);

std::string text_report(const FrobeniusVerdict& v);
nlohmann::json json_report(const FrobeniusVerdict& v);

std::string text_report(const PreservationResult& r, const std::string& function);
nlohmann::json json_report(const PreservationResult& r, const std::string& function);

}  // namespace perfro::cli
