// Copyright 2026 The Skylink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKYLINK_ENV_WORLD_H_
#define SKYLINK_ENV_WORLD_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skylink::env {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class EntityKind { kAircraft, kGround };

// Aircraft occupy ids [0, n_aircraft); ground stations follow.
struct Entity {
  int id = 0;
  EntityKind kind = EntityKind::kAircraft;
  Vec2 pos;
  Vec2 vel;
};

struct ScenarioConfig {
  std::string name;
  int n_aircraft = 4;
  int n_ground = 1;
  int horizon = 50;
  double comm_range = 0.3;
  double world_side = 1.0;
  double v_max = 0.02;
  int max_links = 2;

  int n_entities() const { return n_aircraft + n_ground; }
  // 1 + 3(N - 1): own path-to-ground flag, then (ptg, lk, oc) per other entity.
  int obs_dim() const { return 1 + 3 * (n_entities() - 1); }
  int action_dim() const { return n_entities() - 1; }
  int global_obs_dim() const { return n_aircraft * obs_dim(); }

  // Throws ConfigError.
  void Validate() const;
};

// Undirected graph over entity ids. Edges are stored with the smaller id first
// and kept in insertion order.
class LinkGraph {
 public:
  LinkGraph() = default;
  explicit LinkGraph(int n_entities);

  int n_entities() const { return static_cast<int>(adjacency_.size()); }
  // Returns false if the edge already exists.
  bool Add(int a, int b);
  bool Connected(int a, int b) const;
  int Degree(int e) const { return static_cast<int>(adjacency_[e].size()); }
  const std::vector<int>& Neighbors(int e) const { return adjacency_[e]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }

  friend bool operator==(const LinkGraph& a, const LinkGraph& b) {
    return a.edges_ == b.edges_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
};

struct WorldState {
  int t = 0;
  std::vector<Entity> entities;
  LinkGraph links;
};

using Observation = std::vector<double>;
// Desirability of every other entity, indexed in ascending entity id with the
// acting aircraft skipped.
using ActionVector = std::vector<double>;

inline constexpr double kActionFloor = 1e-6;
inline constexpr double kActionCeil = 1.0 - 1e-6;

// Maps desirability slot k of aircraft `self` to the entity id it refers to.
inline int SlotToEntity(int self, int slot) { return slot < self ? slot : slot + 1; }
inline int EntityToSlot(int self, int entity) { return entity < self ? entity : entity - 1; }

WorldState InitWorld(const ScenarioConfig& cfg, std::uint64_t seed);

// Inclusive: distance <= comm_range.
bool InRange(const Entity& a, const Entity& b, const ScenarioConfig& cfg);

// -1 when i and j are out of range now; otherwise the number of steps
// s in [t, T) at which the constant-velocity extrapolations are in range,
// divided by T.
double LinkRangeFraction(int i, int j, const WorldState& world, const ScenarioConfig& cfg);

// Link resolution for one step. Each aircraft nominates its two most desired
// entities (ties to the lower id). Aircraft pairs connect on mutual nomination
// when in range. Ground stations accept in-range nominations in decreasing
// order of the nominator's desirability (ties to the lower aircraft id) until
// max_links are used. Desirabilities are clamped to [1e-6, 1 - 1e-6] first.
LinkGraph ResolveLinks(const WorldState& world, std::span<const ActionVector> proposals,
                       const ScenarioConfig& cfg);

// 1 for ground stations and every entity graph-connected to one.
std::vector<int> PathToGround(const LinkGraph& links, const WorldState& world);

// Mean path-to-ground flag over the aircraft, in [0, 1].
double Reward(std::span<const int> ptg, const ScenarioConfig& cfg);

Observation Observe(const WorldState& world, int aircraft_id, const ScenarioConfig& cfg);
std::vector<Observation> ObserveAll(const WorldState& world, const ScenarioConfig& cfg);

struct StepResult {
  WorldState world;
  std::vector<Observation> observations;
  std::vector<int> ptg;
  double reward = 0.0;
  bool done = false;
};

// Advance positions, resolve links from the joint action, score the new
// graph, then observe the new world.
StepResult EnvStep(const WorldState& world, std::span<const ActionVector> joint_action,
                   const ScenarioConfig& cfg);

}  // namespace skylink::env

#endif  // SKYLINK_ENV_WORLD_H_
