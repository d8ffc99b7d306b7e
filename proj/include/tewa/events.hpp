#pragma once

// Line-delimited event log:
//   t=<s> ev=<KIND> src=<id> dst=<id> data=<key:val,...>

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tewa {

enum class EventKind { Detect, Propose, Accept, Reject, Lock, Queue, Promote, Fire, Kill, Miss, Leak, Mode };

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Detect: return "DETECT";
    case EventKind::Propose: return "PROPOSE";
    case EventKind::Accept: return "ACCEPT";
    case EventKind::Reject: return "REJECT";
    case EventKind::Lock: return "LOCK";
    case EventKind::Queue: return "QUEUE";
    case EventKind::Promote: return "PROMOTE";
    case EventKind::Fire: return "FIRE";
    case EventKind::Kill: return "KILL";
    case EventKind::Miss: return "MISS";
    case EventKind::Leak: return "LEAK";
    case EventKind::Mode: return "MODE";
  }
  return "?";
}

/// Fixed-precision rendering so logs compare byte for byte.
inline std::string format_fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) s = s.front() == '-' ? s.substr(1) : s;
  return s;
}

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::Detect;
  std::string src;
  std::string dst;
  std::vector<std::pair<std::string, std::string>> data;

  std::string line() const {
    std::string out = "t=" + format_fixed(t, 3) + " ev=" + std::string(to_string(kind)) + " src=" + src +
                      " dst=" + (dst.empty() ? std::string("-") : dst) + " data=";
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (i) out += ',';
      out += data[i].first + ':' + data[i].second;
    }
    return out;
  }
};

class EventLog {
 public:
  void emit(double t, EventKind kind, std::string src, std::string dst,
            std::vector<std::pair<std::string, std::string>> data = {}) {
    events_.push_back({t, kind, std::move(src), std::move(dst), std::move(data)});
  }

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  std::size_t count(EventKind k) const {
    std::size_t n = 0;
    for (const auto& e : events_) n += (e.kind == k);
    return n;
  }

  void write(std::ostream& os) const {
    for (const auto& e : events_) os << e.line() << '\n';
  }

  std::string str() const {
    std::string out;
    for (const auto& e : events_) out += e.line() + '\n';
    return out;
  }

 private:
  std::vector<Event> events_;
};

}  // namespace tewa
