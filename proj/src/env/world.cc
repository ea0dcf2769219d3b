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

#include "skylink/env/world.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "skylink/common/error.h"
#include "skylink/common/rng.h"

namespace skylink::env {

void ScenarioConfig::Validate() const {
  if (n_aircraft < 1) throw ConfigError("n_aircraft must be >= 1");
  if (n_ground < 0) throw ConfigError("n_ground must be >= 0");
  if (n_entities() < 2) throw ConfigError("scenario needs at least two entities");
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (!(comm_range > 0.0)) throw ConfigError("comm_range must be positive");
  if (!(world_side > 0.0)) throw ConfigError("world_side must be positive");
  if (!(v_max >= 0.0)) throw ConfigError("v_max must be non-negative");
  if (max_links != 2) throw ConfigError("max_links is fixed at 2");
}

LinkGraph::LinkGraph(int n_entities) : adjacency_(n_entities) {}

bool LinkGraph::Add(int a, int b) {
  Require(a != b, "LinkGraph: self loop");
  Require(a >= 0 && b >= 0 && a < n_entities() && b < n_entities(), "LinkGraph: id out of range");
  if (Connected(a, b)) return false;
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
  edges_.emplace_back(std::min(a, b), std::max(a, b));
  return true;
}

bool LinkGraph::Connected(int a, int b) const {
  const auto& n = adjacency_[a];
  return std::find(n.begin(), n.end(), b) != n.end();
}

WorldState InitWorld(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.Validate();
  Rng rng(MixSeed(seed));
  WorldState world;
  world.t = 0;
  world.links = LinkGraph(cfg.n_entities());
  world.entities.reserve(cfg.n_entities());
  for (int id = 0; id < cfg.n_entities(); ++id) {
    Entity e;
    e.id = id;
    e.kind = id < cfg.n_aircraft ? EntityKind::kAircraft : EntityKind::kGround;
    e.pos.x = Uniform(rng, 0.0, cfg.world_side);
    e.pos.y = Uniform(rng, 0.0, cfg.world_side);
    if (e.kind == EntityKind::kAircraft) {
      e.vel.x = Uniform(rng, -cfg.v_max, cfg.v_max);
      e.vel.y = Uniform(rng, -cfg.v_max, cfg.v_max);
    }
    world.entities.push_back(e);
  }
  return world;
}

namespace {

double SquaredDistance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Vec2 Extrapolate(const Entity& e, double steps) {
  return {e.pos.x + steps * e.vel.x, e.pos.y + steps * e.vel.y};
}

}  // namespace

bool InRange(const Entity& a, const Entity& b, const ScenarioConfig& cfg) {
  return SquaredDistance(a.pos, b.pos) <= cfg.comm_range * cfg.comm_range;
}

double LinkRangeFraction(int i, int j, const WorldState& world, const ScenarioConfig& cfg) {
  Require(i != j, "LinkRangeFraction: i == j");
  const Entity& a = world.entities.at(i);
  const Entity& b = world.entities.at(j);
  if (!InRange(a, b, cfg)) return -1.0;

  const long last = static_cast<long>(cfg.horizon) - 1 - world.t;  // largest offset
  if (last < 0) return 0.0;

  const double r2 = cfg.comm_range * cfg.comm_range;
  auto inside = [&](long k) {
    return SquaredDistance(Extrapolate(a, static_cast<double>(k)),
                           Extrapolate(b, static_cast<double>(k))) <= r2;
  };

  // |d + k w|^2 <= R^2 is a convex quadratic in k that holds at k = 0, so the
  // in-range offsets form a prefix [0, k_hi].
  const double dx = b.pos.x - a.pos.x, dy = b.pos.y - a.pos.y;
  const double wx = b.vel.x - a.vel.x, wy = b.vel.y - a.vel.y;
  const double qa = wx * wx + wy * wy;
  long k_hi = last;
  if (qa > 0.0) {
    const double qb = 2.0 * (dx * wx + dy * wy);
    const double qc = dx * dx + dy * dy - r2;
    const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
    const double root = (-qb + std::sqrt(disc)) / (2.0 * qa);
    k_hi = root >= static_cast<double>(last)
               ? last
               : std::max(0L, static_cast<long>(std::floor(root)));
    // Snap to the exact predicate near the boundary.
    while (k_hi + 1 <= last && inside(k_hi + 1)) ++k_hi;
    while (k_hi > 0 && !inside(k_hi)) --k_hi;
  }
  return static_cast<double>(k_hi + 1) / static_cast<double>(cfg.horizon);
}

LinkGraph ResolveLinks(const WorldState& world, std::span<const ActionVector> proposals,
                       const ScenarioConfig& cfg) {
  const int n = cfg.n_entities();
  const int n_air = cfg.n_aircraft;
  Require(static_cast<int>(proposals.size()) == n_air,
          "ResolveLinks: expected one action vector per aircraft");

  std::vector<std::vector<double>> desire(n_air);
  std::vector<std::vector<char>> nominates(n_air, std::vector<char>(n, 0));
  const int picks = std::min(cfg.max_links, n - 1);
  for (int a = 0; a < n_air; ++a) {
    const ActionVector& act = proposals[a];
    if (static_cast<int>(act.size()) != n - 1) {
      throw ContractViolation("ResolveLinks: desirability vector has length " +
                              std::to_string(act.size()) + ", expected " + std::to_string(n - 1));
    }
    desire[a].resize(n - 1);
    for (int k = 0; k < n - 1; ++k) {
      Require(std::isfinite(act[k]), "ResolveLinks: non-finite desirability");
      desire[a][k] = std::clamp(act[k], kActionFloor, kActionCeil);
    }
    std::vector<int> slots(n - 1);
    std::iota(slots.begin(), slots.end(), 0);
    // Slots are in ascending entity id, so a stable sort breaks ties to the lower id.
    std::stable_sort(slots.begin(), slots.end(),
                     [&](int l, int r) { return desire[a][l] > desire[a][r]; });
    for (int p = 0; p < picks; ++p) nominates[a][SlotToEntity(a, slots[p])] = 1;
  }

  LinkGraph links(n);
  for (int a = 0; a < n_air; ++a) {
    for (int b = a + 1; b < n_air; ++b) {
      if (nominates[a][b] && nominates[b][a] &&
          InRange(world.entities[a], world.entities[b], cfg)) {
        links.Add(a, b);
      }
    }
  }

  for (int g = n_air; g < n; ++g) {
    std::vector<int> bidders;
    for (int a = 0; a < n_air; ++a) {
      if (nominates[a][g] && InRange(world.entities[a], world.entities[g], cfg)) {
        bidders.push_back(a);
      }
    }
    std::stable_sort(bidders.begin(), bidders.end(), [&](int l, int r) {
      return desire[l][EntityToSlot(l, g)] > desire[r][EntityToSlot(r, g)];
    });
    for (int a : bidders) {
      if (links.Degree(g) >= cfg.max_links) break;
      links.Add(a, g);
    }
  }
  return links;
}

std::vector<int> PathToGround(const LinkGraph& links, const WorldState& world) {
  const int n = static_cast<int>(world.entities.size());
  Require(links.n_entities() == n, "PathToGround: graph size mismatch");
  std::vector<int> ptg(n, 0);
  std::deque<int> frontier;
  for (const Entity& e : world.entities) {
    if (e.kind == EntityKind::kGround) {
      ptg[e.id] = 1;
      frontier.push_back(e.id);
    }
  }
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int v : links.Neighbors(u)) {
      if (!ptg[v]) {
        ptg[v] = 1;
        frontier.push_back(v);
      }
    }
  }
  return ptg;
}

double Reward(std::span<const int> ptg, const ScenarioConfig& cfg) {
  Require(static_cast<int>(ptg.size()) >= cfg.n_aircraft, "Reward: ptg too short");
  int connected = 0;
  for (int a = 0; a < cfg.n_aircraft; ++a) connected += ptg[a];
  return static_cast<double>(connected) / static_cast<double>(cfg.n_aircraft);
}

namespace {

Observation ObserveWith(const WorldState& world, int self, const std::vector<int>& ptg,
                        const ScenarioConfig& cfg) {
  const int n = cfg.n_entities();
  Observation obs;
  obs.reserve(cfg.obs_dim());
  obs.push_back(ptg[self]);
  for (int slot = 0; slot < n - 1; ++slot) {
    const int e = SlotToEntity(self, slot);
    obs.push_back(ptg[e]);
    obs.push_back(LinkRangeFraction(self, e, world, cfg));
    obs.push_back(2.0 * world.links.Degree(e) / cfg.max_links - 1.0);
  }
  return obs;
}

}  // namespace

Observation Observe(const WorldState& world, int aircraft_id, const ScenarioConfig& cfg) {
  Require(aircraft_id >= 0 && aircraft_id < cfg.n_aircraft, "Observe: invalid aircraft id");
  return ObserveWith(world, aircraft_id, PathToGround(world.links, world), cfg);
}

std::vector<Observation> ObserveAll(const WorldState& world, const ScenarioConfig& cfg) {
  const std::vector<int> ptg = PathToGround(world.links, world);
  std::vector<Observation> out;
  out.reserve(cfg.n_aircraft);
  for (int a = 0; a < cfg.n_aircraft; ++a) out.push_back(ObserveWith(world, a, ptg, cfg));
  return out;
}

StepResult EnvStep(const WorldState& world, std::span<const ActionVector> joint_action,
                   const ScenarioConfig& cfg) {
  Require(world.t < cfg.horizon, "EnvStep: episode already finished");
  StepResult out;
  out.world.t = world.t + 1;
  out.world.entities = world.entities;
  for (Entity& e : out.world.entities) {
    e.pos.x += e.vel.x;
    e.pos.y += e.vel.y;
  }
  out.world.links = ResolveLinks(out.world, joint_action, cfg);
  out.ptg = PathToGround(out.world.links, out.world);
  out.reward = Reward(out.ptg, cfg);
  out.observations.reserve(cfg.n_aircraft);
  for (int a = 0; a < cfg.n_aircraft; ++a) {
    out.observations.push_back(ObserveWith(out.world, a, out.ptg, cfg));
  }
  out.done = out.world.t == cfg.horizon;
  return out;
}

}  // namespace skylink::env
