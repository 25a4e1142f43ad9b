// Copyright 2026 The fowtcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fowt/config.hpp"

#include <filesystem>
#include <set>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "fowt/errors.hpp"

namespace fowt {

namespace {

class Section {
 public:
  Section(const YAML::Node& node, std::string name)
      : node_(node), name_(std::move(name)),
        present_(node.IsDefined() && !node.IsNull()) {
    if (present_ && !node_.IsMap()) {
      throw ConfigError("config section '" + name_ + "' must be a mapping");
    }
  }

  ~Section() noexcept(false) {
    if (!present_ || std::uncaught_exceptions() > 0) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ConfigError(fmt::format("unknown config key '{}.{}'", name_, key));
      }
    }
  }

  template <typename T>
  void read(const char* key, T& value) {
    seen_.insert(key);
    if (!present_ || !node_[key]) return;
    try {
      value = node_[key].as<T>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(fmt::format("config key '{}.{}': {}", name_, key, e.what()));
    }
  }

  YAML::Node child(const char* key) {
    seen_.insert(key);
    return present_ ? node_[key] : YAML::Node(YAML::NodeType::Undefined);
  }

  const std::string& name() const { return name_; }

 private:
  const YAML::Node node_;
  std::string name_;
  bool present_;
  std::set<std::string> seen_;
};

void read_spec(Section& parent, const char* key, TransientSpec& spec) {
  Section s(parent.child(key), parent.name() + "." + key);
  s.read("omega", spec.omega_pi);
  s.read("zeta", spec.zeta_pi);
}

ToolkitConfig from_root(const YAML::Node& root) {
  ToolkitConfig c;
  Section top(root, "");

  {
    Section s(top.child("turbine"), "turbine");
    RotorGeometry& g = c.geom;
    s.read("radius", g.radius);
    s.read("air_density", g.air_density);
    s.read("gearbox_ratio", g.gearbox_ratio);
    s.read("rotor_inertia", g.rotor_inertia);
    s.read("rated_gen_speed", g.rated_gen_speed);
    s.read("rated_gen_torque", g.rated_gen_torque);
    s.read("rated_wind", g.rated_wind);
    s.read("cutout_wind", g.cutout_wind);
    s.read("beta_min", g.beta_min);
    s.read("beta_max", g.beta_max);
    s.read("beta_rate_max", g.beta_rate_max);
  }
  {
    Section s(top.child("surface"), "surface");
    SurrogateParams& p = c.surrogate;
    s.read("file", c.surface_file);
    std::vector<double> coeffs(p.c.begin(), p.c.end());
    s.read("cp_constants", coeffs);
    if (coeffs.size() != p.c.size()) {
      throw ConfigError("surface.cp_constants needs six values");
    }
    std::copy(coeffs.begin(), coeffs.end(), p.c.begin());
    s.read("ct0", p.ct0);
    s.read("lambda_ref", p.lambda_ref);
    s.read("k_beta", p.k_beta);
    s.read("cp_max", p.cp_max);
    s.read("ct_max", p.ct_max);
    s.read("lambda_min", p.lambda_min);
    s.read("lambda_max", p.lambda_max);
    s.read("lambda_points", p.lambda_points);
    s.read("beta_min", p.beta_min);
    s.read("beta_max", p.beta_max);
    s.read("beta_points", p.beta_points);
  }
  {
    Section s(top.child("platform"), "platform");
    s.read("inertia", c.platform.inertia);
    s.read("damping", c.platform.damping);
    s.read("restoring", c.platform.restoring);
    s.read("hub_height", c.platform.hub_height);
  }
  {
    Section s(top.child("actuators"), "actuators");
    ActuatorParams& a = c.actuators;
    s.read("pitch_lag", a.pitch_lag);
    s.read("platform_lag", a.platform_lag);
    s.read("platform_moment_max", a.platform_moment_max);
    s.read("ballast_lag", a.ballast_lag);
    s.read("ballast_moment_max", a.ballast_moment_max);
  }
  {
    Section s(top.child("tuning"), "tuning");
    TuningConfig& t = c.tuning;
    read_spec(s, "baseline", t.targets.baseline);
    read_spec(s, "detuned", t.targets.detuned);
    read_spec(s, "high_speed", t.targets.high_speed);
    s.read("grid_spacing", t.grid_spacing);
    s.read("m_beta", t.m_beta);
    s.read("phi_dot_max", t.phi_dot_max);
    s.read("tau_g_max_ratio", t.tau_g_max_ratio);
    s.read("platform_bandwidth", t.platform_bandwidth);
    s.read("ballast_settle_time", t.ballast_settle_time);
  }
  {
    Section s(top.child("controller"), "controller");
    s.read("speed_lpf_ratio", c.filters.speed_lpf_ratio);
    s.read("pitch_rate_lpf", c.filters.pitch_rate_lpf);
    s.read("pitch_rate_hpf", c.filters.pitch_rate_hpf);
    s.read("schedule_lpf", c.filters.schedule_lpf);
    s.read("dt", c.controller_dt);
    s.read("region_hysteresis", c.region_hysteresis);
  }
  {
    Section s(top.child("wind"), "wind");
    s.read("i_ref", c.i_ref);
    s.read("dt", c.wind_dt);
    s.read("length_scale", c.length_scale);
  }
  {
    Section s(top.child("simulation"), "simulation");
    SimConfig& m = c.sim;
    s.read("duration", m.duration);
    s.read("discard", m.discard);
    s.read("dt_plant", m.dt_plant);
    std::string mode = m.ballast_mode == BallastMode::static_prior
                           ? "static_prior" : "closed_loop";
    s.read("ballast_mode", mode);
    m.ballast_mode = parse_ballast_mode(mode);
    s.read("tower_share", m.tower_share);
    s.read("overspeed_ratio", m.overspeed_ratio);
  }
  {
    Section s(top.child("study"), "study");
    StudyConfig& st = c.study;
    s.read("speeds", st.speeds);
    s.read("seeds", st.seeds);
    s.read("master_seed", st.master_seed);
    s.read("variants", st.variants);
    s.read("workers", st.workers);
    double ref = 0.0;
    const YAML::Node ref_node = s.child("myt_reference");
    if (ref_node.IsDefined() && !ref_node.IsNull()) {
      s.read("myt_reference", ref);
      st.myt_reference = ref;
    }
  }
  c.sim.dt_ctrl = c.controller_dt;
  c.validate();
  return c;
}

}  // namespace

void StudyConfig::validate() const {
  if (speeds.empty()) throw ConfigError("study needs at least one wind speed");
  if (seeds < 1) throw ConfigError("study needs at least one seed");
  if (workers < 0) throw ConfigError("worker count must be non-negative");
  if (myt_reference && !(*myt_reference > 0.0)) {
    throw ConfigError("tower-moment reference must be positive");
  }
}

void ToolkitConfig::validate() const {
  geom.validate();
  platform.validate();
  actuators.validate();
  sim.validate();
  study.validate();
  tuning.targets.baseline.validate();
  tuning.targets.detuned.validate();
  tuning.targets.high_speed.validate();
  if (!(i_ref >= 0.0 && wind_dt > 0.0 && length_scale > 0.0)) {
    throw ConfigError("wind settings out of range");
  }
  if (!(tuning.phi_dot_max > 0.0) || !(tuning.tau_g_max_ratio >= 1.0)) {
    throw ConfigError("compensation saturation settings out of range");
  }
}

PerformanceSurface ToolkitConfig::surface() const {
  if (!surface_file.empty()) return load_surface(surface_file);
  return build_surrogate_surface(surrogate);
}

ToolkitConfig parse_config(const std::string& yaml_text) {
  try {
    return from_root(YAML::Load(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

ToolkitConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open config file " + path);
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  ToolkitConfig c = from_root(root);
  if (!c.surface_file.empty()) {
    const std::filesystem::path p(c.surface_file);
    if (p.is_relative()) {
      c.surface_file =
          (std::filesystem::path(path).parent_path() / p).lexically_normal().string();
    }
  }
  return c;
}

}  // namespace fowt
