#include "pixelneat/arena/environment.hpp"

#include "pixelneat/arena/render.hpp"
#include "pixelneat/arena/sim.hpp"

namespace pixelneat::arena {

struct ArenaEnvironment::Impl {
  SimState state = arena::reset(0);
  Framebuffer frame;
};

ArenaEnvironment::ArenaEnvironment() : impl_(std::make_unique<Impl>()) {}
ArenaEnvironment::~ArenaEnvironment() = default;

void ArenaEnvironment::reset(std::uint64_t seed) { impl_->state = arena::reset(seed); }

const Framebuffer& ArenaEnvironment::render() {
  arena::render(impl_->state, impl_->frame);
  return impl_->frame;
}

bool ArenaEnvironment::submit(ActionCommand cmd) { return submit_action(impl_->state, cmd); }

void ArenaEnvironment::advance(int ticks) {
  for (int i = 0; i < ticks; ++i) step(impl_->state);
}

}  // namespace pixelneat::arena
