#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tewa {

/// Fire-control status shared by defended assets and weapon systems.
enum class Status { FreeToFire, OnHold, Tight };

enum class Condition { Up, Down, Destroyed };

/// Defence strategy in force for a decision cycle.
enum class Mode { Subtractive, Preferential };

enum class Outcome { Destroyed, Leaker, Active };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::FreeToFire: return "FreeToFire";
    case Status::OnHold: return "OnHold";
    case Status::Tight: return "Tight";
  }
  return "?";
}

inline std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Up: return "Up";
    case Condition::Down: return "Down";
    case Condition::Destroyed: return "Destroyed";
  }
  return "?";
}

inline std::string_view to_string(Mode m) { return m == Mode::Subtractive ? "Subtractive" : "Preferential"; }

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Destroyed: return "Destroyed";
    case Outcome::Leaker: return "Leaker";
    case Outcome::Active: return "Active";
  }
  return "?";
}

inline std::optional<Status> parse_status(std::string_view s) {
  if (s == "FreeToFire") return Status::FreeToFire;
  if (s == "OnHold") return Status::OnHold;
  if (s == "Tight") return Status::Tight;
  return std::nullopt;
}

inline std::optional<Condition> parse_condition(std::string_view s) {
  if (s == "Up") return Condition::Up;
  if (s == "Down") return Condition::Down;
  if (s == "Destroyed") return Condition::Destroyed;
  return std::nullopt;
}

}  // namespace tewa
