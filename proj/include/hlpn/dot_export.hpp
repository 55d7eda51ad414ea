#pragma once

#include <string>

#include "hlpn/environment.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/spec_net.hpp"

namespace hlpn {

// Graphviz renderings of the three net layers: places as circles (final
// places doubled, the marked place shaded), transitions as boxes carrying
// their guard or movement label.

std::string to_dot(const spec_opn& net);
std::string to_dot(const robot_opn& net);
/// The outer system net: the robot and mission places with one transition
/// per synchronization arity, arcs labeled with their variable inscriptions.
std::string system_net_dot(int team_size);

}  // namespace hlpn
