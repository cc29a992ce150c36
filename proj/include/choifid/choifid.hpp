/*
   Copyright 2026 The choifid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CHOIFID_CHOIFID_HPP
#define CHOIFID_CHOIFID_HPP

#include "choifid/cmat.hpp"
#include "choifid/eig.hpp"
#include "choifid/channel.hpp"
#include "choifid/symmetry.hpp"
#include "choifid/sampling.hpp"
#include "choifid/sdp.hpp"
#include "choifid/s1norm.hpp"
#include "choifid/fidelity.hpp"
#include "choifid/formats.hpp"

#endif  // CHOIFID_CHOIFID_HPP
