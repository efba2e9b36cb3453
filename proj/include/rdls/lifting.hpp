#ifndef RDLS_LIFTING_HPP_
#define RDLS_LIFTING_HPP_

// Sequences of reversible (denoising and) lifting steps.
//
// A step modifies one target plane:  target <- target (+) f(sources)
// where the sources are the two other planes, optionally denoised. f never
// sees the target plane, so the inverse  target <- target (-) f(sources)
// recomputes exactly the same f as long as the sources are restored first.
// Steps run in the step-by-step regime: one step covers every pixel before
// the next starts, and denoised sources live only for the duration of the
// step that uses them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdls/core.hpp"
#include "rdls/denoise.hpp"
#include "rdls/filter_spec.hpp"

namespace rdls {

enum class Combine : std::uint8_t {
  negated_sum,  // a (+) b = -a + b; its own inverse
  sum,          // a (+) b = a + b; inverse c (-) b = c - b
  keep,         // a (+) b = a; relabeling only
};

// Per-pixel mixer. Receives the values of the two non-target planes in plane
// index order (after optional denoising).
using Mixer = std::function<std::int64_t(Sample first, Sample second)>;

struct LiftStep {
  std::size_t target = 0;
  Combine combine = Combine::keep;
  Mixer mixer;
  // Optional denoising of each source plane, in plane index order.
  std::array<std::optional<FilterSpec>, 2> denoise{};
  Role role_before = Role::R;
  Role role_after = Role::R;
  Bounds bounds_before = kPrimaryBounds;
  Bounds bounds_after = kPrimaryBounds;
};

struct LiftSequence {
  std::string name;
  Roles input_roles = kRgbRoles;
  std::vector<LiftStep> steps;
  // Output plane i is working plane output_order[i].
  std::array<std::size_t, 3> output_order{0, 1, 2};
};

// Arithmetic used by the combine operations. The counting variant lets tests
// measure how many additions and subtractions a transform performs.
struct ExactArithmetic {
  std::int64_t add(std::int64_t a, std::int64_t b) { return a + b; }
  std::int64_t sub(std::int64_t a, std::int64_t b) { return a - b; }
};

struct CountingArithmetic {
  std::uint64_t additions = 0;
  std::uint64_t subtractions = 0;
  std::int64_t add(std::int64_t a, std::int64_t b) {
    ++additions;
    return a + b;
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) {
    ++subtractions;
    return a - b;
  }
};

namespace detail {

struct WorkingImage {
  int width;
  int height;
  std::array<std::vector<Sample>, 3> samples;
  std::array<Bounds, 3> bounds;
  Roles roles;
};

inline WorkingImage to_working(const ColorImage& img) {
  WorkingImage w{img.width(), img.height(), {}, {}, img.roles()};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto s = img.plane(i).samples();
    w.samples[i].assign(s.begin(), s.end());
    w.bounds[i] = img.plane(i).bounds();
  }
  return w;
}

inline std::array<std::size_t, 2> source_indices(std::size_t target) {
  switch (target) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

// Source plane values as seen by the mixer: either the plane itself or a
// denoised copy computed from its current state.
inline std::vector<Sample> step_source(const WorkingImage& w, std::size_t index,
                                       const std::optional<FilterSpec>& filter) {
  if (!filter) return w.samples[index];
  const Plane current =
      Plane::make(w.width, w.height, w.bounds[index], w.samples[index]);
  const Plane denoised = denoise_plane(current, *filter);
  const auto s = denoised.samples();
  return std::vector<Sample>(s.begin(), s.end());
}

template <class Arith>
std::int64_t combine_forward(Combine c, std::int64_t a, std::int64_t b,
                             Arith& arith) {
  switch (c) {
    case Combine::negated_sum: return arith.sub(b, a);
    case Combine::sum: return arith.add(a, b);
    case Combine::keep: return a;
  }
  return a;
}

template <class Arith>
std::int64_t combine_inverse(Combine c, std::int64_t t, std::int64_t b,
                             Arith& arith) {
  switch (c) {
    case Combine::negated_sum: return arith.sub(b, t);
    case Combine::sum: return arith.sub(t, b);
    case Combine::keep: return t;
  }
  return t;
}

template <class Arith>
void run_step(WorkingImage& w, const LiftStep& step, bool inverse,
              const std::string& name, Arith& arith) {
  const Role expected_role = inverse ? step.role_after : step.role_before;
  if (w.roles[step.target] != expected_role) {
    throw Error(name + ": plane " + std::to_string(step.target) + " has role " +
                std::string(to_string(w.roles[step.target])) + ", expected " +
                std::string(to_string(expected_role)));
  }
  const Bounds out_bounds = inverse ? step.bounds_before : step.bounds_after;

  if (step.combine != Combine::keep) {
    const auto src = source_indices(step.target);
    const std::vector<Sample> first = step_source(w, src[0], step.denoise[0]);
    const std::vector<Sample> second = step_source(w, src[1], step.denoise[1]);
    std::vector<Sample>& target = w.samples[step.target];
    for (std::size_t i = 0; i < target.size(); ++i) {
      const std::int64_t b = step.mixer(first[i], second[i]);
      const std::int64_t v = inverse
                                 ? combine_inverse(step.combine, target[i], b, arith)
                                 : combine_forward(step.combine, target[i], b, arith);
      if (!out_bounds.contains(v)) {
        const std::string where = "pixel " + std::to_string(i) + " value " +
                                  std::to_string(v) + " outside [" +
                                  std::to_string(out_bounds.min) + ", " +
                                  std::to_string(out_bounds.max) + "]";
        if (inverse) throw Error("not a valid " + name + " image: " + where);
        throw std::logic_error(name + ": step output exceeds declared bounds at " +
                               where);
      }
      target[i] = static_cast<Sample>(v);
    }
  }
  w.bounds[step.target] = out_bounds;
  w.roles[step.target] = inverse ? step.role_before : step.role_after;
}

}  // namespace detail

template <class Arith>
ColorImage apply_forward(const ColorImage& img, const LiftSequence& seq,
                         Arith& arith) {
  if (img.roles() != seq.input_roles) {
    throw Error(seq.name + ": input roles " + roles_to_string(img.roles()) +
                " do not match expected " + roles_to_string(seq.input_roles));
  }
  detail::WorkingImage w = detail::to_working(img);
  for (const LiftStep& step : seq.steps) {
    detail::run_step(w, step, false, seq.name, arith);
  }
  std::array<std::size_t, 3> order = seq.output_order;
  return ColorImage(
      {Plane::make(w.width, w.height, w.bounds[order[0]], std::move(w.samples[order[0]])),
       Plane::make(w.width, w.height, w.bounds[order[1]], std::move(w.samples[order[1]])),
       Plane::make(w.width, w.height, w.bounds[order[2]], std::move(w.samples[order[2]]))},
      Roles{w.roles[order[0]], w.roles[order[1]], w.roles[order[2]]});
}

inline ColorImage apply_forward(const ColorImage& img, const LiftSequence& seq) {
  ExactArithmetic arith;
  return apply_forward(img, seq, arith);
}

template <class Arith>
ColorImage apply_inverse(const ColorImage& img, const LiftSequence& seq,
                         Arith& arith) {
  // Undo the output permutation first.
  detail::WorkingImage w{img.width(), img.height(), {}, {}, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t slot = seq.output_order[i];
    const auto s = img.plane(i).samples();
    w.samples[slot].assign(s.begin(), s.end());
    w.bounds[slot] = img.plane(i).bounds();
    w.roles[slot] = img.role(i);
  }
  for (auto it = seq.steps.rbegin(); it != seq.steps.rend(); ++it) {
    detail::run_step(w, *it, true, seq.name, arith);
  }
  if (w.roles != seq.input_roles) {
    throw Error(seq.name + ": inverse produced roles " + roles_to_string(w.roles));
  }
  return ColorImage(
      {Plane::make(w.width, w.height, w.bounds[0], std::move(w.samples[0])),
       Plane::make(w.width, w.height, w.bounds[1], std::move(w.samples[1])),
       Plane::make(w.width, w.height, w.bounds[2], std::move(w.samples[2]))},
      w.roles);
}

inline ColorImage apply_inverse(const ColorImage& img, const LiftSequence& seq) {
  ExactArithmetic arith;
  return apply_inverse(img, seq, arith);
}

}  // namespace rdls

#endif  // RDLS_LIFTING_HPP_
