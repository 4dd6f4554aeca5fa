#include "thermorelax/scenario/presets.hpp"

#include <stdexcept>

namespace thermorelax::scenario {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      {"eq6_ou",
       "Free-particle momentum relaxation under friction: the mean decays as e^{-bt/m} and the variance "
       "approaches m kT.",
       R"([scenario]
name = eq6_ou
task = relax

[system]
potential = free

[space]
space = momentum
shift = 2

[thermo]
backend = classical
kT = 1
friction = 1

[grid]
lo = -10
hi = 10
n = 401

[stepping]
t_end = 20
stride = 100
)"},
      {"eq7_smoluchowski",
       "Overdamped position-space relaxation in a harmonic well toward the Boltzmann density of variance "
       "kT/(m omega^2).",
       R"([scenario]
name = eq7_smoluchowski
task = relax

[system]
potential = harmonic

[space]
space = position

[thermo]
backend = classical
kT = 0.5
friction = 1

[grid]
lo = -6
hi = 6
n = 241

[stepping]
t_end = 20
stride = 100
)"},
      {"eq8_response",
       "Mean displacement of a damped quantum oscillator, relaxing with the friction b z coth z.",
       R"([scenario]
name = eq8_response
task = response

[system]
potential = harmonic

[space]
y0 = 1

[thermo]
beta = 2
friction = 1

[stepping]
t_end = 10
dt = 0.001
)"},
      {"eq9_phase",
       "Quantum phase-space relaxation of an oscillator: slice-wise canonical free energies along q and p "
       "with the full friction supermatrix.",
       R"([scenario]
name = eq9_phase
task = relax

[system]
potential = harmonic

[space]
space = phase
shift = 1
shift_p = 0

[thermo]
backend = canonical
kT = 1
friction = 1

[grid]
lo = -9
hi = 9
n = 101
p_lo = -9
p_hi = 9
p_n = 101

[stepping]
t_end = 10
stride = 100
)"},
      {"eq10_equilibrium",
       "Quantum phase-space equilibrium density built from position and momentum eigenstates with Boltzmann "
       "weights.",
       R"([scenario]
name = eq10_equilibrium
task = equilibrium

[system]
potential = harmonic

[thermo]
backend = canonical
beta = 2

[grid]
lo = -8
hi = 8
n = 161
p_lo = -8
p_hi = 8
p_n = 161
)"},
      {"eq11_kramers",
       "Classical phase-space relaxation of a damped oscillator toward the Maxwell-Boltzmann distribution.",
       R"([scenario]
name = eq11_kramers
task = relax

[system]
potential = harmonic

[space]
space = phase
shift = 1
shift_p = 0

[thermo]
backend = classical
kT = 1
friction = 1

[grid]
lo = -8
hi = 8
n = 121
p_lo = -8
p_hi = 8
p_n = 121

[stepping]
t_end = 10
stride = 100
)"},
      {"coth_sweep",
       "Thermal oscillator variance from the eigen-expansion Gibbs density compared with (hbar/2m omega) "
       "coth(beta hbar omega/2).",
       R"([scenario]
name = coth_sweep
task = coth_sweep

[system]
potential = harmonic

[thermo]
backend = canonical
betas = 0.1, 0.5, 1, 2, 10

[grid]
lo = -30
hi = 30
n = 2001
)"},
  };
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const Preset& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace thermorelax::scenario
