#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pharos/errors.hpp"
#include "pharos/geodesy.hpp"
#include "pharos/route.hpp"
#include "pharos/visibility.hpp"

namespace pharos {

/// 45°-wide bands of the relative angle between walking direction and the
/// bearing to the landmark. Positive angles are to the right.
enum class RelativeSector {
  Ahead,
  AheadRight,
  Right,
  BehindRight,
  Behind,
  BehindLeft,
  Left,
  AheadLeft
};

enum class InstructionKind { Start, TurnWithLandmark, InSegment, EndOfStreet, PlainTBT, Arrive };
enum class Tense { Future, Present };

const char* to_string(RelativeSector s);
const char* to_string(InstructionKind k);
const char* to_string(Tense t);

struct Instruction {
  InstructionKind kind = InstructionKind::PlainTBT;
  TurnClass turn_class = TurnClass::Straight;
  std::optional<RelativeSector> sector;
  std::string text;
  GeoPoint trigger_location;
  bool notify = true;  // false only for InSegment
  Tense tense = Tense::Future;
};

/// Band lookup. Boundary angles belong to the more-clockwise band
/// (22.5 → AheadRight). Ahead spans [-22.5, 22.5); Behind wraps across ±180.
RelativeSector sector_of(double relative_deg);

/// Standalone sentence for a landmark in the given sector, sentence-cased.
/// Future tense uses "will be" positions plus the imperatives "Head towards
/// {name}" / "Head away from {name}"; Present tense replaces "will be" with
/// "is" and renders Ahead/Behind as "{name} is in front of/behind you".
std::string render_landmark_phrase(RelativeSector sector, Tense tense, const std::string& name);

/// Lowercase variant for use after "At the end of the street, ": identical to
/// the standalone rendering except Ahead/Behind stay positional ("{name} will
/// be in front of you" / "... behind you") instead of imperative.
std::string continuation_landmark_phrase(RelativeSector sector, Tense tense,
                                         const std::string& name);

/// "Turn left", "Turn slightly right", "Make a U-turn", ... plus
/// " onto {street}" when the outgoing segment is named. Straight renders as
/// "Continue straight" with no street.
std::string turn_phrase(TurnClass turn_class, const std::optional<std::string>& street);

/// Instruction for one interior turning point: TurnWithLandmark when the
/// landmark is visible there, EndOfStreet when visible (only) at the segment
/// end, PlainTBT otherwise. A landmark within 1 m of the checkpoint has no
/// defined bearing and falls back to PlainTBT with a warning. The trigger
/// location defaults to the turning point itself.
Instruction instruction_for_turning_point(const TurningPoint& tp, const Landmark& landmark,
                                          const VisibilityMap& map, const GeoPoint& segment_end,
                                          const std::optional<std::string>& outgoing_street =
                                              std::nullopt,
                                          const GeoPoint* trigger = nullptr);

/// Mid-segment reassurance: "Continue straight", plus the Present-tense
/// landmark phrase when visible at the midpoint. Never notifies.
Instruction in_segment_instruction(const GeoPoint& midpoint, double heading_deg,
                                   const Landmark& landmark, const VisibilityMap& map);

struct InstructionOptions {
  double trigger_offset_m = 5.0;
  /// Baseline mode: no landmark phrases anywhere; every turn is PlainTBT and
  /// the start is a compass phrase.
  bool plain_tbt = false;
};

/// Full sequence: Start, then per interior turning point one turn instruction
/// (triggered trigger_offset_m before the point along the incoming segment,
/// clamped to its start) and one InSegment at the midpoint of the span to the
/// next turning point, then Arrive ("You have arrived") at the last waypoint.
std::vector<Instruction> generate_route_instructions(const Route& route, const Landmark& landmark,
                                                     const VisibilityMap& map,
                                                     const InstructionOptions& opts = {});

/// One JSON object per line: {"seq","kind","turn_class","sector","text",
/// "trigger_lat","trigger_lon","notify","tense"}; sector is null when absent.
std::string to_jsonl(const std::vector<Instruction>& sequence);

}  // namespace pharos
