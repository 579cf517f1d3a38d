#pragma once

#include <cstdint>
#include <memory>

#include "pixelneat/arena/action.hpp"
#include "pixelneat/framebuffer.hpp"

namespace pixelneat::arena {

// What an agent-side loop may touch: pixels out, commands in, time forward.
// Simulator state stays behind this interface.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual void reset(std::uint64_t seed) = 0;
  virtual const Framebuffer& render() = 0;
  // False if the command was discarded because another action is running.
  virtual bool submit(ActionCommand cmd) = 0;
  virtual void advance(int ticks) = 0;
};

// Simulator-backed environment. Holds its SimState privately.
class ArenaEnvironment final : public Environment {
 public:
  ArenaEnvironment();
  ~ArenaEnvironment() override;
  ArenaEnvironment(const ArenaEnvironment&) = delete;
  ArenaEnvironment& operator=(const ArenaEnvironment&) = delete;

  void reset(std::uint64_t seed) override;
  const Framebuffer& render() override;
  bool submit(ActionCommand cmd) override;
  void advance(int ticks) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pixelneat::arena
