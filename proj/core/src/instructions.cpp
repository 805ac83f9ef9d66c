#include "pharos/instructions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "pharos/log.hpp"

namespace pharos {

namespace {

std::string sentence_case(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

const char* position_of(RelativeSector sector) {
  switch (sector) {
    case RelativeSector::Right: return "on your right";
    case RelativeSector::Left: return "on your left";
    case RelativeSector::AheadRight: return "in front of you to your right";
    case RelativeSector::AheadLeft: return "in front of you to your left";
    case RelativeSector::BehindRight: return "behind you on your right";
    case RelativeSector::BehindLeft: return "behind you on your left";
    case RelativeSector::Ahead: return "in front of you";
    case RelativeSector::Behind: return "behind you";
  }
  return "";
}

std::string compass_name(double bearing_deg) {
  static const char* names[8] = {"north", "northeast", "east", "southeast",
                                 "south", "southwest", "west", "northwest"};
  double b = std::fmod(bearing_deg + 22.5, 360.0);
  if (b < 0) b += 360.0;
  return names[static_cast<int>(b / 45.0) % 8];
}

bool bearing_defined(const GeoPoint& from, const GeoPoint& to) {
  return haversine_distance(from, to) >= 1.0;
}

}  // namespace

const char* to_string(RelativeSector s) {
  switch (s) {
    case RelativeSector::Ahead: return "ahead";
    case RelativeSector::AheadRight: return "ahead_right";
    case RelativeSector::Right: return "right";
    case RelativeSector::BehindRight: return "behind_right";
    case RelativeSector::Behind: return "behind";
    case RelativeSector::BehindLeft: return "behind_left";
    case RelativeSector::Left: return "left";
    case RelativeSector::AheadLeft: return "ahead_left";
  }
  return "?";
}

const char* to_string(InstructionKind k) {
  switch (k) {
    case InstructionKind::Start: return "start";
    case InstructionKind::TurnWithLandmark: return "turn_with_landmark";
    case InstructionKind::InSegment: return "in_segment";
    case InstructionKind::EndOfStreet: return "end_of_street";
    case InstructionKind::PlainTBT: return "plain_tbt";
    case InstructionKind::Arrive: return "arrive";
  }
  return "?";
}

const char* to_string(Tense t) { return t == Tense::Future ? "future" : "present"; }

RelativeSector sector_of(double relative_deg) {
  double a = normalize_relative(relative_deg);
  if (a >= 157.5 || a < -157.5) return RelativeSector::Behind;
  if (a < -112.5) return RelativeSector::BehindLeft;
  if (a < -67.5) return RelativeSector::Left;
  if (a < -22.5) return RelativeSector::AheadLeft;
  if (a < 22.5) return RelativeSector::Ahead;
  if (a < 67.5) return RelativeSector::AheadRight;
  if (a < 112.5) return RelativeSector::Right;
  return RelativeSector::BehindRight;
}

std::string render_landmark_phrase(RelativeSector sector, Tense tense, const std::string& name) {
  if (name.empty()) throw InvalidParamsError("landmark name must be non-empty");
  if (tense == Tense::Future) {
    if (sector == RelativeSector::Ahead) return "Head towards " + name;
    if (sector == RelativeSector::Behind) return "Head away from " + name;
    return sentence_case(name + " will be " + position_of(sector));
  }
  return sentence_case(name + " is " + position_of(sector));
}

std::string continuation_landmark_phrase(RelativeSector sector, Tense tense,
                                         const std::string& name) {
  if (name.empty()) throw InvalidParamsError("landmark name must be non-empty");
  const char* verb = tense == Tense::Future ? " will be " : " is ";
  return name + verb + position_of(sector);
}

std::string turn_phrase(TurnClass turn_class, const std::optional<std::string>& street) {
  std::string base;
  switch (turn_class) {
    case TurnClass::Straight: return "Continue straight";
    case TurnClass::SoftLeft: base = "Turn slightly left"; break;
    case TurnClass::SoftRight: base = "Turn slightly right"; break;
    case TurnClass::Left: base = "Turn left"; break;
    case TurnClass::Right: base = "Turn right"; break;
    case TurnClass::SharpLeft: base = "Turn sharp left"; break;
    case TurnClass::SharpRight: base = "Turn sharp right"; break;
    case TurnClass::UTurn: base = "Make a U-turn"; break;
    case TurnClass::Start:
    case TurnClass::End:
      throw InvalidParamsError("no turn phrase for route termini");
  }
  if (street) base += " onto " + *street;
  return base;
}

Instruction instruction_for_turning_point(const TurningPoint& tp, const Landmark& landmark,
                                          const VisibilityMap& map, const GeoPoint& segment_end,
                                          const std::optional<std::string>& outgoing_street,
                                          const GeoPoint* trigger) {
  if (!tp.outgoing_heading)
    throw InvalidParamsError("turning point needs an outgoing heading");
  validate(landmark);

  Instruction ins;
  ins.turn_class = tp.turn_class;
  ins.trigger_location = trigger ? *trigger : tp.location;
  ins.notify = true;
  ins.tense = Tense::Future;
  std::string turn = turn_phrase(tp.turn_class, outgoing_street);

  if (!bearing_defined(tp.location, landmark.location)) {
    log_warn("landmark coincides with a turning point; using a plain instruction");
  } else if (lookup_visibility(map, tp.location) == VisState::Visible) {
    double rel =
        normalize_relative(initial_bearing(tp.location, landmark.location) - *tp.outgoing_heading);
    ins.kind = InstructionKind::TurnWithLandmark;
    ins.sector = sector_of(rel);
    ins.text = turn + ". " + render_landmark_phrase(*ins.sector, Tense::Future, landmark.name);
    return ins;
  } else if (lookup_visibility(map, segment_end) == VisState::Visible &&
             bearing_defined(segment_end, landmark.location)) {
    double rel = normalize_relative(initial_bearing(segment_end, landmark.location) -
                                    *tp.outgoing_heading);
    ins.kind = InstructionKind::EndOfStreet;
    ins.sector = sector_of(rel);
    ins.text = turn + ". At the end of the street, " +
               continuation_landmark_phrase(*ins.sector, Tense::Future, landmark.name);
    return ins;
  }
  ins.kind = InstructionKind::PlainTBT;
  ins.text = turn;
  return ins;
}

Instruction in_segment_instruction(const GeoPoint& midpoint, double heading_deg,
                                   const Landmark& landmark, const VisibilityMap& map) {
  validate(landmark);
  Instruction ins;
  ins.kind = InstructionKind::InSegment;
  ins.turn_class = TurnClass::Straight;
  ins.text = "Continue straight";
  ins.trigger_location = midpoint;
  ins.notify = false;
  ins.tense = Tense::Present;
  if (lookup_visibility(map, midpoint) == VisState::Visible &&
      bearing_defined(midpoint, landmark.location)) {
    double rel =
        normalize_relative(initial_bearing(midpoint, landmark.location) - heading_deg);
    ins.sector = sector_of(rel);
    ins.text += ". " + render_landmark_phrase(*ins.sector, Tense::Present, landmark.name);
  }
  return ins;
}

std::vector<Instruction> generate_route_instructions(const Route& route, const Landmark& landmark,
                                                     const VisibilityMap& map,
                                                     const InstructionOptions& opts) {
  if (route.waypoints.size() < 2)
    throw TooFewPointsError("route needs at least 2 waypoints");
  if (opts.trigger_offset_m < 0.0) throw InvalidParamsError("trigger offset must be >= 0");
  if (!opts.plain_tbt) validate(landmark);

  const auto& wps = route.waypoints;
  auto headings = segment_headings(route);
  auto tps = extract_turning_points(route);
  std::vector<double> legs;
  legs.reserve(wps.size() - 1);
  for (size_t i = 0; i + 1 < wps.size(); ++i)
    legs.push_back(haversine_distance(wps[i], wps[i + 1]));

  auto street_of = [&](int segment) -> std::optional<std::string> {
    if (segment < 0 || segment >= static_cast<int>(route.streets.size())) return std::nullopt;
    return route.streets[segment];
  };

  // Point halfway along the polyline span [a, b], plus the containing leg's
  // heading. Spans between turning points may cross straight waypoints.
  auto span_midpoint = [&](int a, int b, double& heading_out) {
    double span = 0.0;
    for (int l = a; l < b; ++l) span += legs[l];
    double half = span / 2.0;
    double walked = 0.0;
    for (int l = a; l < b; ++l) {
      if (walked + legs[l] >= half) {
        double t = (half - walked) / legs[l];
        EnuOffset o = to_local_enu(wps[l], wps[l + 1]);
        heading_out = headings[l];
        return from_local_enu(wps[l], {o.east_m * t, o.north_m * t});
      }
      walked += legs[l];
    }
    heading_out = headings[b - 1];
    return wps[b];
  };

  std::vector<Instruction> seq;

  Instruction start;
  start.kind = InstructionKind::Start;
  start.turn_class = TurnClass::Start;
  start.trigger_location = wps[0];
  start.notify = true;
  start.tense = Tense::Future;
  if (!opts.plain_tbt && lookup_visibility(map, wps[0]) == VisState::Visible &&
      bearing_defined(wps[0], landmark.location)) {
    double rel = normalize_relative(initial_bearing(wps[0], landmark.location) - headings[0]);
    start.sector = sector_of(rel);
    start.text = render_landmark_phrase(*start.sector, Tense::Future, landmark.name);
  } else {
    start.text = "Head " + compass_name(headings[0]);
    if (auto street = street_of(0)) start.text += " on " + *street;
  }
  seq.push_back(std::move(start));

  for (size_t k = 1; k + 1 < tps.size(); ++k) {
    const TurningPoint& tp = tps[k];
    int next_index = tps[k + 1].index;
    const GeoPoint& segment_end = wps[next_index];

    double back = normalize_bearing(*tp.incoming_heading + 180.0);
    double incoming_len = legs[tp.index - 1];
    GeoPoint trigger =
        destination_point(tp.location, back, std::min(opts.trigger_offset_m, incoming_len));

    if (opts.plain_tbt) {
      Instruction plain;
      plain.kind = InstructionKind::PlainTBT;
      plain.turn_class = tp.turn_class;
      plain.text = turn_phrase(tp.turn_class, street_of(tp.index));
      plain.trigger_location = trigger;
      plain.notify = true;
      plain.tense = Tense::Future;
      seq.push_back(std::move(plain));
    } else {
      seq.push_back(instruction_for_turning_point(tp, landmark, map, segment_end,
                                                  street_of(tp.index), &trigger));
    }

    double mid_heading = 0.0;
    GeoPoint mid = span_midpoint(tp.index, next_index, mid_heading);
    if (opts.plain_tbt) {
      Instruction mid_ins;
      mid_ins.kind = InstructionKind::InSegment;
      mid_ins.turn_class = TurnClass::Straight;
      mid_ins.text = "Continue straight";
      mid_ins.trigger_location = mid;
      mid_ins.notify = false;
      mid_ins.tense = Tense::Present;
      seq.push_back(std::move(mid_ins));
    } else {
      seq.push_back(in_segment_instruction(mid, mid_heading, landmark, map));
    }
  }

  Instruction arrive;
  arrive.kind = InstructionKind::Arrive;
  arrive.turn_class = TurnClass::End;
  arrive.text = "You have arrived";
  arrive.trigger_location = wps.back();
  arrive.notify = true;
  arrive.tense = Tense::Present;
  seq.push_back(std::move(arrive));
  return seq;
}

std::string to_jsonl(const std::vector<Instruction>& sequence) {
  std::string out;
  for (size_t i = 0; i < sequence.size(); ++i) {
    const Instruction& ins = sequence[i];
    nlohmann::ordered_json j;
    j["seq"] = i;
    j["kind"] = to_string(ins.kind);
    j["turn_class"] = to_string(ins.turn_class);
    if (ins.sector)
      j["sector"] = to_string(*ins.sector);
    else
      j["sector"] = nullptr;
    j["text"] = ins.text;
    j["trigger_lat"] = ins.trigger_location.lat;
    j["trigger_lon"] = ins.trigger_location.lon;
    j["notify"] = ins.notify;
    j["tense"] = to_string(ins.tense);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pharos
