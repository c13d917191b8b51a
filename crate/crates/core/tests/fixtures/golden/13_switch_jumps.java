public class Main {
    public static void main(String[] args) {
        int total = 0;                                 // v1 s1
        for (int i = 0; i < 10; i++) {                 // loop1 v2 s2
            if (i % 3 == 0) continue;                  // if1 s3, continue s4
            switch (i % 4) {                           // switch1 s5
                case 0:                                // s6
                    total += 1;                        // s7
                    break;                             // break1 s8
                case 1:                                // s9
                case 2:                                // s10
                    total += 2;                        // s11
                    break;                             // break2 s12
                default:                               // s13
                    total -= 1;                        // s14
            }
        }
        System.out.println(total);                     // s15
    }
}
